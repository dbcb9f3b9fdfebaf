#include "qtop/cohomology.hpp"

#include <algorithm>

namespace qtop {

Z2Matrix boundary_matrix(const SimplicialComplex& cx, int d) {
    require(d >= 1 && d <= cx.top_dim, ErrKind::Range, "boundary_matrix: bad dimension");
    Z2Matrix M(cx.count(d - 1), cx.count(d));
    for (int j = 0; j < cx.count(d); ++j) {
        const auto& s = cx.cell(d, j);
        std::vector<int> f;
        f.reserve(s.size() - 1);
        for (size_t omit = 0; omit < s.size(); ++omit) {
            f.clear();
            for (size_t t = 0; t < s.size(); ++t)
                if (t != omit) f.push_back(s[t]);
            int i = cx.index_of(d - 1, f);
            require(i >= 0, ErrKind::Internal, "complex not closed under faces");
            M.set(i, j, true);
        }
    }
    return M;
}

std::vector<int> betti(const SimplicialComplex& cx) {
    if (cx.top_dim < 0) return {};
    std::vector<int> rk(cx.top_dim + 2, 0);
    for (int d = 1; d <= cx.top_dim; ++d) rk[d] = boundary_matrix(cx, d).rank();
    std::vector<int> b(cx.top_dim + 1);
    for (int d = 0; d <= cx.top_dim; ++d) b[d] = cx.count(d) - rk[d] - rk[d + 1];
    return b;
}

std::vector<std::vector<int>> facet_indices(const SimplicialComplex& cx, int d) {
    std::vector<std::vector<int>> out(cx.count(d));
    if (d < 1) return out;
    for (int j = 0; j < cx.count(d); ++j) {
        const auto& s = cx.cell(d, j);
        std::vector<int> f;
        f.reserve(s.size() - 1);
        for (size_t omit = 0; omit < s.size(); ++omit) {
            f.clear();
            for (size_t t = 0; t < s.size(); ++t)
                if (t != omit) f.push_back(s[t]);
            int i = cx.index_of(d - 1, f);
            require(i >= 0, ErrKind::Internal, "complex not closed under faces");
            out[j].push_back(i);
        }
    }
    return out;
}

BitVec coboundary(const SimplicialComplex& cx, const BitVec& c, int d) {
    require(c.n == cx.count(d), ErrKind::Dimension, "coboundary: cochain length mismatch");
    BitVec out(cx.count(d + 1));
    if (d + 1 > cx.top_dim) return out;
    auto faces = facet_indices(cx, d + 1);
    for (int t = 0; t < cx.count(d + 1); ++t) {
        bool v = false;
        for (int f : faces[t]) v ^= c.get(f);
        out.set(t, v);
    }
    return out;
}

BitVec cup_product(const SimplicialComplex& cx, const BitVec& a, int i, const BitVec& b, int j) {
    require(a.n == cx.count(i) && b.n == cx.count(j), ErrKind::Dimension,
            "cup_product: cochain length mismatch");
    if (i + j > cx.top_dim) return BitVec(cx.count(i + j));
    BitVec out(cx.count(i + j));
    std::vector<int> front(i + 1), back(j + 1);
    for (int t = 0; t < cx.count(i + j); ++t) {
        const auto& s = cx.cell(i + j, t);
        for (int u = 0; u <= i; ++u) front[u] = s[u];
        for (int u = 0; u <= j; ++u) back[u] = s[i + u];
        int fi = cx.index_of(i, front);
        int bi = cx.index_of(j, back);
        require(fi >= 0 && bi >= 0, ErrKind::Internal, "cup: faces missing from complex");
        if (a.get(fi) && b.get(bi)) out.set(t, true);
    }
    return out;
}

SimplicialComplex restrict_complex(const SimplicialComplex& cx, const SubMask& mask) {
    std::vector<std::vector<int>> cells;
    for (int d = 0; d <= cx.top_dim; ++d)
        for (int i = 0; i < cx.count(d); ++i)
            if (mask.contains(d, i)) cells.push_back(cx.cell(d, i));
    return SimplicialComplex::from_cells(std::move(cells));
}

PairCohomology::PairCohomology(const SimplicialComplex& cx, SubMask A) : cx_(&cx), A_(std::move(A)) {
    int top = cx.top_dim;
    int degs = std::max(top + 1, 0);
    dims_.assign(degs, 0);
    support_.resize(degs);
    support_pos_.resize(degs);
    reps_.resize(degs);
    span_.resize(degs);
    n_boundary_.assign(degs, 0);

    if (A_.in.empty() && top >= 0) A_ = SubMask::none(cx);

    for (int d = 0; d <= top; ++d) {
        support_pos_[d].assign(cx.count(d), -1);
        for (int i = 0; i < cx.count(d); ++i)
            if (!A_.contains(d, i)) {
                support_pos_[d][i] = static_cast<int>(support_[d].size());
                support_[d].push_back(i);
            }
    }

    /* Per degree: eliminate the relative coboundary images of the support
       basis cochains (kernel combos are the cocycles), then quotient by the
       coboundaries coming from one degree down. */
    std::vector<std::vector<BitVec>> cocycles(degs);
    std::vector<std::vector<BitVec>> boundary_rows(degs);  // in degree d: images from d-1
    for (int d = 0; d <= top; ++d) {
        const int ns = static_cast<int>(support_[d].size());
        const int nt = (d + 1 <= top) ? static_cast<int>(support_[d + 1].size()) : 0;
        auto faces = (d + 1 <= top) ? facet_indices(cx, d + 1) : std::vector<std::vector<int>>{};
        // rows of the relative coboundary, one per support basis cochain
        std::vector<BitVec> rows(ns, BitVec(nt));
        if (d + 1 <= top)
            for (int tt = 0; tt < nt; ++tt) {
                int full_t = support_[d + 1][tt];
                for (int f : faces[full_t]) {
                    int sp = support_pos_[d][f];
                    if (sp >= 0) rows[sp].set(tt, true);
                }
            }
        Z2Span ker_span(nt, ns);
        for (int s = 0; s < ns; ++s) {
            BitVec before = rows[s];
            auto red = ker_span.reduce(before);
            if (!red.residue.any()) {
                // dependent: combo over previously inserted + this one is a cocycle
                BitVec z(ns);
                for (int t = 0; t < s; ++t)
                    if (red.combo.get(t)) z.set(t, true);
                z.set(s, true);
                cocycles[d].push_back(std::move(z));
                ker_span.insert(before);  // keep insert indices aligned
            } else {
                ker_span.insert(before);
            }
        }
        if (d + 1 <= top) {
            boundary_rows[d + 1].reserve(ns);
            for (int s = 0; s < ns; ++s) boundary_rows[d + 1].push_back(rows[s]);
        }
    }

    for (int d = 0; d <= top; ++d) {
        const int ns = static_cast<int>(support_[d].size());
        span_[d] = std::make_unique<Z2Span>(ns, static_cast<int>(boundary_rows[d].size()) +
                                                    static_cast<int>(cocycles[d].size()));
        for (const auto& b : boundary_rows[d]) span_[d]->insert(b);
        n_boundary_[d] = span_[d]->inserted();
        for (const auto& z : cocycles[d]) {
            if (span_[d]->insert(z)) {
                BitVec full(cx.count(d));
                for (int s = 0; s < ns; ++s)
                    if (z.get(s)) full.set(support_[d][s], true);
                reps_[d].push_back(std::move(full));
            }
        }
        dims_[d] = static_cast<int>(reps_[d].size());
    }
}

BitVec PairCohomology::compress(int d, const BitVec& full) const {
    BitVec out(static_cast<int>(support_[d].size()));
    for (size_t s = 0; s < support_[d].size(); ++s)
        if (full.get(support_[d][s])) out.set(static_cast<int>(s), true);
    return out;
}

BitVec PairCohomology::express(int d, const BitVec& cocycle) const {
    require(d >= 0 && d < static_cast<int>(dims_.size()), ErrKind::Range, "express: bad degree");
    // the input must vanish on the subcomplex
    for (int i = 0; i < cx_->count(d); ++i)
        if (A_.contains(d, i))
            require(!cocycle.get(i), ErrKind::Internal, "express: cochain does not vanish on A");
    auto red = span_[d]->reduce(compress(d, cocycle));
    require(!red.residue.any(), ErrKind::Internal, "express: not a cocycle of the pair");
    BitVec out(dims_[d]);
    for (int r = 0; r < dims_[d]; ++r)
        if (red.combo.get(n_boundary_[d] + r)) out.set(r, true);
    return out;
}

}  // namespace qtop
