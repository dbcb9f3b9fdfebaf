#include "qtop/spectral.hpp"

#include <algorithm>
#include <climits>

namespace qtop {

namespace {

int euler_sum(const Page& p) {
    int s = 0;
    for (size_t i = 0; i < p.cell.size(); ++i)
        for (size_t j = 0; j < p.cell[i].size(); ++j) {
            if (!p.cell[i][j].exact()) return INT_MIN;
            s += ((i + j) % 2 == 0 ? 1 : -1) * p.cell[i][j].lo;
        }
    return s;
}

bool any_possible_differential(const Page& p, int r) {
    for (size_t i = 0; i < p.cell.size(); ++i)
        for (size_t j = 0; j < p.cell[i].size(); ++j) {
            if (p.cell[i][j].hi == 0) continue;
            if (p.at(static_cast<int>(i) + r, static_cast<int>(j) - r + 1).hi > 0) return true;
        }
    return false;
}

}  // namespace

const Differential* SpectralTable::find_diff(int r, int i, int j) const {
    for (const auto& d : diffs)
        if (d.r == r && d.i == i && d.j == j) return &d;
    return nullptr;
}

SpectralTable assemble_E2(const OmegaComplex& cone, const QuadraticMap& map) {
    require(cone.apex >= 0, ErrKind::Internal, "assemble_E2 needs the cone complex");
    require(cone.labeled(), ErrKind::Internal, "assemble_E2 needs labels");
    SpectralTable t;
    t.n = map.n;
    t.k = map.k;
    t.mu = 0;
    for (int v = 0; v < cone.vertex_count(); ++v)
        if (v != cone.apex) t.mu = std::max(t.mu, cone.labels[v].pos);

    t.pairs.reserve(t.n + 1);
    for (int j = 0; j <= t.n; ++j)
        t.pairs.emplace_back(cone.cx, subcomplex_for(cone, j + 1));

    Page e2;
    e2.r = 2;
    e2.cell.assign(t.k + 2, std::vector<CellInterval>(t.n + 1, CellInterval{}));
    for (int i = 0; i <= t.k + 1; ++i)
        for (int j = 0; j <= t.n; ++j) {
            int d = t.pairs[j].dim(i);
            e2.cell[i][j] = CellInterval{d, d};
        }
    t.pages.push_back(std::move(e2));
    return t;
}

void compute_d2_level(SpectralTable& table, const OmegaComplex& cone, const QuadraticMap& map,
                      int j, const FrameOptions& opt) {
    require(j >= 1 && j <= table.n, ErrKind::Range, "d2 level out of range");
    const Page& e2 = table.pages.front();
    std::vector<int> sources;
    for (int i = 0; i + 2 <= table.k + 1; ++i)
        if (e2.at(i, j).hi > 0 && e2.at(i + 2, j - 1).hi > 0) sources.push_back(i);
    if (sources.empty()) return;

    GammaCochain gamma = gamma_cochain(cone, map, j, opt);
    const PairCohomology& target = table.pairs[j - 1];
    const PairCohomology& source = table.pairs[j];
    const SubMask& A_target = target.subcomplex();

    for (int i : sources) {
        const auto& reps = source.representatives(i);
        Z2Matrix M(target.dim(i + 2), static_cast<int>(reps.size()));
        for (size_t s = 0; s < reps.size(); ++s) {
            BitVec z = cup_product(cone.cx, reps[s], i, gamma.values, 2);
            for (int tt = 0; tt < cone.cx.count(i + 2); ++tt)
                if (A_target.contains(i + 2, tt) && z.get(tt))
                    fail(ErrKind::StratumResolution,
                         "holonomy class does not restrict to the target stratum pair; "
                         "refine the mesh");
            BitVec coeffs = target.express(i + 2, z);
            for (int r = 0; r < M.rows; ++r)
                if (coeffs.get(r)) M.set(r, static_cast<int>(s), true);
        }
        table.diffs.push_back(Differential{2, i, j, std::move(M), "cup-gamma"});
    }
}

void compute_dk1_constant(SpectralTable& table, const OmegaComplex& base_mesh,
                          const QuadraticMap& map, const FrameOptions& opt) {
    const int k = table.k;
    int w = sw_top_constant_index(base_mesh, map, table.mu, opt);
    for (int b = std::max(table.mu, k); b <= table.n; ++b) {
        int i = 0, j = b, ti = k + 1, tj = b - k;
        const Page& cur = table.final_page();
        if (cur.at(i, j).hi == 0 || cur.at(ti, tj).hi == 0) continue;
        require(cur.at(i, j).exact() && cur.at(ti, tj).exact() && cur.at(i, j).lo == 1 &&
                    cur.at(ti, tj).lo == 1,
                ErrKind::Internal, "constant-index cells are not lines");
        Z2Matrix M(1, 1);
        M.set(0, 0, w == 1);
        if (const Differential* existing = table.find_diff(k + 1, i, j)) {
            // k = 1 computes d_2 by the holonomy route as well
            require(existing->matrix.get(0, 0) == M.get(0, 0), ErrKind::Internal,
                    "holonomy route and top-class route disagree");
            continue;
        }
        table.diffs.push_back(Differential{k + 1, i, j, std::move(M), "w-top"});
    }
}

void page_turn(SpectralTable& table) {
    const Page& cur = table.pages.back();
    const int r = cur.r;
    Page next;
    next.r = r + 1;
    next.cell = cur.cell;

    for (size_t i = 0; i < cur.cell.size(); ++i)
        for (size_t j = 0; j < cur.cell[i].size(); ++j) {
            int si = static_cast<int>(i), sj = static_cast<int>(j);
            CellInterval src = cur.at(si, sj);
            CellInterval tgt = cur.at(si + r, sj - r + 1);
            if (src.hi == 0 || tgt.hi == 0) continue;
            if (const Differential* d = table.find_diff(r, si, sj)) {
                require(src.exact() && tgt.exact(), ErrKind::Internal,
                        "computed differential on an inexact cell");
                int rank = d->matrix.rank();
                next.cell[i][j].lo -= rank;
                next.cell[i][j].hi -= rank;
                next.cell[si + r][sj - r + 1].lo -= rank;
                next.cell[si + r][sj - r + 1].hi -= rank;
            } else {
                int m = std::min(src.hi, tgt.hi);
                next.cell[i][j].lo = std::max(0, next.cell[i][j].lo - m);
                next.cell[si + r][sj - r + 1].lo =
                    std::max(0, next.cell[si + r][sj - r + 1].lo - m);
                table.unknown.push_back({r, si, sj});
                table.bounds_only = true;
            }
        }
    for (auto& col : next.cell)
        for (auto& c : col) {
            require(c.lo >= 0 && c.lo <= c.hi, ErrKind::Internal, "cell interval corrupted");
        }
    int e0 = euler_sum(cur), e1 = euler_sum(next);
    if (e0 != INT_MIN && e1 != INT_MIN)
        require(e0 == e1, ErrKind::Internal, "Euler characteristic drifted across pages");
    table.pages.push_back(std::move(next));
}

void advance_to_infinity(SpectralTable& table, const OmegaComplex& cone,
                         const OmegaComplex& base_mesh, const QuadraticMap& map,
                         const FrameOptions& opt) {
    bool constant_index = base_mesh.sphere_like && base_mesh.vertex_count() > 0 && table.mu >= 1;
    for (int v = 0; v < base_mesh.vertex_count() && constant_index; ++v)
        if (base_mesh.labels[v].pos != table.mu) constant_index = false;

    while (true) {
        const Page& cur = table.final_page();
        bool possible = false;
        for (int r = cur.r; r <= table.k + 1 && !possible; ++r)
            possible = any_possible_differential(cur, r);
        if (!possible) {
            table.degenerate_at = cur.r;
            break;
        }
        if (cur.r == 2)
            for (int j = 1; j <= table.n; ++j) compute_d2_level(table, cone, map, j, opt);
        if (cur.r == table.k + 1 && constant_index && (table.k == 1 || table.k == 2))
            compute_dk1_constant(table, base_mesh, map, opt);
        page_turn(table);
        if (table.final_page().r > table.k + 2) {
            table.degenerate_at = table.final_page().r;
            break;
        }
    }

    // consecutive second differentials compose to zero
    for (const auto& d : table.diffs) {
        if (d.r != 2) continue;
        if (const Differential* e = table.find_diff(2, d.i + 2, d.j - 1)) {
            // e after d ... d maps (i,j) -> (i+2, j-1), e maps onward
            Z2Matrix comp = z2_mul(e->matrix, d.matrix);
            for (int a = 0; a < comp.rows; ++a)
                require(!comp.row[a].any(), ErrKind::Internal, "d2 composed with d2 is nonzero");
        }
    }
}

BettiReport betti_report(const SpectralTable& table) {
    const Page& inf = table.final_page();
    BettiReport rep;
    rep.mu = table.mu;
    rep.betti.assign(table.n + 1, BettiEntry{});
    for (int b = 0; b <= table.n; ++b) {
        int lo = 0, hi = 0;
        for (int i = 0; i <= table.k + 1; ++i) {
            int j = table.n - b - i;
            if (j < 0 || j > table.n) continue;
            lo += inf.at(i, j).lo;
            hi += inf.at(i, j).hi;
        }
        rep.betti[b] = BettiEntry{lo, hi};
    }
    bool all_zero = true;
    for (const auto& col : inf.cell)
        for (const auto& c : col)
            if (c.hi != 0) all_zero = false;
    rep.empty_certified = all_zero;

    for (const auto& d : table.diffs)
        rep.notes.push_back("d" + std::to_string(d.r) + " at (" + std::to_string(d.i) + "," +
                            std::to_string(d.j) + "): rank " + std::to_string(d.matrix.rank()) +
                            " via " + d.provenance);
    for (const auto& u : table.unknown)
        rep.notes.push_back("d" + std::to_string(u[0]) + " at (" + std::to_string(u[1]) + "," +
                            std::to_string(u[2]) + "): not computed, bounds only");

    // guaranteed low-degree homology when n >= mu + k
    for (int b = 0; b + table.mu + table.k <= table.n; ++b) {
        if (b + table.mu + table.k < table.n) {
            require(rep.betti[b].exact() && rep.betti[b].lo == 1, ErrKind::Internal,
                    "guaranteed low-degree homology violated");
        } else {
            require(rep.betti[b].lo >= 1, ErrKind::Internal,
                    "guaranteed nonemptiness violated");
        }
    }
    return rep;
}

std::vector<BettiEntry> inclusion_rank(const SpectralTable& table) {
    const Page& inf = table.final_page();
    std::vector<BettiEntry> out(table.n + 1, BettiEntry{});
    for (int a = 0; a <= table.n; ++a) {
        CellInterval c = inf.at(0, table.n - a);
        out[a] = BettiEntry{c.lo, c.hi};
        if (a > table.n - table.mu)
            require(c.hi == 0, ErrKind::Internal,
                    "inclusion rank must vanish above n - mu");
    }
    return out;
}

}  // namespace qtop
