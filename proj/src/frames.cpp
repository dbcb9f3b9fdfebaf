#include "qtop/frames.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <optional>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "qtop/cohomology.hpp"
#include "qtop/jacobi.hpp"
#include "qtop/parallel.hpp"

namespace qtop {

namespace {

std::vector<double> pencil_shadow(const QuadraticMap& map, const std::vector<double>& omega) {
    const size_t sz = map.forms[0].shadow.size();
    std::vector<double> m(sz, 0.0);
    for (int t = 0; t <= map.k; ++t) {
        if (omega[t] == 0.0) continue;
        const auto& s = map.forms[t].shadow;
        for (size_t i = 0; i < sz; ++i) m[i] += omega[t] * s[i];
    }
    return m;
}

std::vector<double> ray_to_double(const RatVec& r) {
    std::vector<double> out(r.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = to_double(r[i]);
    return out;
}

EigenFrame frame_at(const QuadraticMap& map, const std::vector<double>& omega, int j,
                    double gap_floor) {
    const int n1 = map.n + 1;
    auto shadow = pencil_shadow(map, omega);
    JacobiEigen eig = jacobi_eigen(shadow, n1);
    double scale = std::max(spectral_radius_estimate(shadow, n1), 1e-300);
    double gap = eig.values[j - 1] - eig.values[j];
    if (gap < gap_floor * scale)
        fail(ErrKind::Gap, "spectral gap below floor", gap);
    EigenFrame f;
    f.j = j;
    f.dim = n1;
    f.gap = gap;
    f.cols.assign(eig.vectors.begin(), eig.vectors.begin() + j);
    return f;
}

double det_small(std::vector<std::vector<double>> m) {
    const int n = static_cast<int>(m.size());
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (int j2 = c; j2 < n; ++j2) m[r][j2] -= f * m[c][j2];
        }
    }
    return det;
}

double overlap_det(const EigenFrame& a, const EigenFrame& b) {
    std::vector<std::vector<double>> m(a.j, std::vector<double>(a.j, 0.0));
    for (int r = 0; r < a.j; ++r)
        for (int c = 0; c < a.j; ++c) {
            double s = 0;
            for (int i = 0; i < a.dim; ++i) s += a.cols[r][i] * b.cols[c][i];
            m[r][c] = s;
        }
    return det_small(std::move(m));
}

/* Composite transport bit along the straight ray segment, bisecting until
   every step has a decisive overlap. */
int transport_recursive(const QuadraticMap& map, int j, const RatVec& ra, const EigenFrame& fa,
                        const RatVec& rb, const EigenFrame& fb, const FrameOptions& opt,
                        int depth) {
    double d = overlap_det(fa, fb);
    if (std::fabs(d) >= opt.overlap_floor) return d < 0 ? 1 : 0;
    if (depth >= opt.max_edge_depth)
        fail(ErrKind::Overlap, "transport overlap stayed indecisive at depth cap", d);
    RatVec mid(ra.size());
    for (size_t i = 0; i < mid.size(); ++i) mid[i] = ra[i] + rb[i];
    mid = primitive_ray(mid);
    EigenFrame fm = frame_at(map, ray_to_double(mid), j, opt.gap_floor);
    return transport_recursive(map, j, ra, fa, mid, fm, opt, depth + 1) ^
           transport_recursive(map, j, mid, fm, rb, fb, opt, depth + 1);
}

}  // namespace

EigenFrame top_eigenframe(const QuadraticForm& form, int j, double gap_floor) {
    require(j >= 1 && j <= form.dim - 1, ErrKind::Range, "frame level out of range");
    JacobiEigen eig = jacobi_eigen(form.shadow, form.dim);
    double scale = std::max(spectral_radius_estimate(form.shadow, form.dim), 1e-300);
    double gap = eig.values[j - 1] - eig.values[j];
    if (gap < gap_floor * scale)
        fail(ErrKind::Gap, "spectral gap below floor", gap);
    EigenFrame f;
    f.j = j;
    f.dim = form.dim;
    f.gap = gap;
    f.cols.assign(eig.vectors.begin(), eig.vectors.begin() + j);
    return f;
}

int transport_sign(const EigenFrame& a, const EigenFrame& b, double overlap_floor) {
    require(a.j == b.j && a.dim == b.dim, ErrKind::Dimension, "transport between unequal frames");
    double d = overlap_det(a, b);
    if (std::fabs(d) < overlap_floor)
        fail(ErrKind::Overlap, "near-singular frame overlap", d);
    return d < 0 ? 1 : 0;
}

W1Cochain w1_cochain(const OmegaComplex& mesh, const QuadraticMap& map, int j,
                     const FrameOptions& opt) {
    require(mesh.apex < 0, ErrKind::Internal, "w1 edge bits live on the base mesh");
    require(j >= 1, ErrKind::Range, "w1 level must be positive");
    const int ne = mesh.cx.count(1);
    W1Cochain out;
    out.j = j;
    out.bits = BitVec(ne);
    out.mask = BitVec(ne);

    // vertex frames first (missing gap -> incident edges masked)
    std::vector<std::optional<EigenFrame>> frames(mesh.vertex_count());
    std::vector<uint8_t> tried(mesh.vertex_count(), 0);
    for (int e = 0; e < ne; ++e)
        for (int v : mesh.cx.cell(1, e)) tried[v] = 1;
    parallel_for(mesh.vertex_count(), [&](int v) {
        if (!tried[v]) return;
        try {
            frames[v] = frame_at(map, ray_to_double(mesh.rays[v]), j, opt.gap_floor);
        } catch (const Error&) {
            frames[v] = std::nullopt;
        }
    });

    std::vector<int8_t> bits(ne, -1);
    parallel_for(ne, [&](int e) {
        const auto& s = mesh.cx.cell(1, e);
        if (!frames[s[0] ] || !frames[s[1]]) return;
        try {
            bits[e] = static_cast<int8_t>(transport_recursive(
                map, j, mesh.rays[s[0]], *frames[s[0]], mesh.rays[s[1]], *frames[s[1]], opt, 0));
        } catch (const Error&) {
            bits[e] = -1;
        }
    });
    for (int e = 0; e < ne; ++e) {
        if (bits[e] < 0) {
            ++out.masked_count;
            continue;
        }
        out.mask.set(e, true);
        out.bits.set(e, bits[e] == 1);
    }
    return out;
}

namespace {

/* Detour transport for an edge whose straight segment pinches the gap:
   route through a point pushed into the given triangle. Endpoint frames
   come from the caller (they may be synthetic gauges at locus vertices,
   where only a decisive single-step overlap is accepted). */
std::optional<int> detour_bit(const QuadraticMap& map, int j, const OmegaComplex& cone,
                              const EigenFrame& fu, const EigenFrame& fv, bool locus_u,
                              bool locus_v, int u, int v, int w, const FrameOptions& opt) {
    auto norm_scale = [&](int vid) {
        double n = 0;
        for (double x : ray_to_double(cone.rays[vid])) n += x * x;
        n = std::sqrt(n);
        long s = static_cast<long>(std::llround(1048576.0 / std::max(n, 1e-9)));
        return std::max(s, 1L);
    };
    long su = norm_scale(u), sv = norm_scale(v), sw = norm_scale(w);
    for (long push_div : {4L, 16L, 64L}) {
        RatVec m(cone.rays[u].size());
        for (size_t i = 0; i < m.size(); ++i)
            m[i] = Rat(su * push_div) * cone.rays[u][i] + Rat(sv * push_div) * cone.rays[v][i] +
                   Rat(sw) * cone.rays[w][i];
        m = primitive_ray(m);
        try {
            EigenFrame fm = frame_at(map, ray_to_double(m), j, opt.gap_floor);
            auto leg = [&](const RatVec& ra, const EigenFrame& fa, bool locus,
                           const RatVec& rb, const EigenFrame& fb) {
                if (locus) {
                    double d = overlap_det(fa, fb);
                    if (std::fabs(d) < opt.overlap_floor)
                        fail(ErrKind::Overlap, "indecisive overlap at a locus vertex", d);
                    return d < 0 ? 1 : 0;
                }
                return transport_recursive(map, j, ra, fa, rb, fb, opt, 0);
            };
            int bit = leg(cone.rays[u], fu, locus_u, m, fm) ^
                      leg(cone.rays[v], fv, locus_v, m, fm);
            return bit;
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace

GammaCochain gamma_cochain(const OmegaComplex& cone, const QuadraticMap& map, int j,
                           const FrameOptions& opt) {
    require(cone.apex >= 0, ErrKind::Internal, "gamma needs the cone complex");
    const auto& cx = cone.cx;
    const int ne = cx.count(1);

    GammaCochain out;
    out.j = j;
    out.edge_bits = BitVec(ne);

    // base-edge transport bits; meridian edges stay zero
    std::vector<int8_t> state(ne, 0);  // 0 = zero bit, 1 = one bit, -1 = masked base edge
    std::vector<std::optional<EigenFrame>> frames(cone.vertex_count());
    std::vector<uint8_t> on_locus(cone.vertex_count(), 0);
    parallel_for(cone.vertex_count(), [&](int v) {
        if (v == cone.apex) return;
        try {
            frames[v] = frame_at(map, ray_to_double(cone.rays[v]), j, opt.gap_floor);
        } catch (const Error&) {
            frames[v] = std::nullopt;
        }
    });
    // a vertex sitting exactly on the gap-closing locus has no eigenframe,
    // but any gauge works there: take the frame of a point nudged toward
    // the star average (holonomies are gauge invariant)
    {
        std::vector<std::vector<int>> nbrs(cone.vertex_count());
        for (int e = 0; e < ne; ++e) {
            const auto& s = cx.cell(1, e);
            if (s[0] == cone.apex || s[1] == cone.apex) continue;
            nbrs[s[0]].push_back(s[1]);
            nbrs[s[1]].push_back(s[0]);
        }
        for (int v = 0; v < cone.vertex_count(); ++v) {
            if (v == cone.apex || frames[v] || nbrs[v].empty()) continue;
            on_locus[v] = 1;
            auto scale_of = [&](int vid) {
                double n = 0;
                for (double x : ray_to_double(cone.rays[vid])) n += x * x;
                long s = static_cast<long>(std::llround(1048576.0 / std::max(std::sqrt(n), 1e-9)));
                return std::max(s, 1L);
            };
            std::sort(nbrs[v].begin(), nbrs[v].end());
            long sv = scale_of(v);
            for (long K : {64L, 256L, 1024L, 4096L}) {
                if (frames[v]) break;
                for (int w : nbrs[v]) {
                    long sw = scale_of(w);
                    RatVec p(cone.rays[v].size());
                    for (size_t i = 0; i < p.size(); ++i)
                        p[i] = Rat(sv * K) * cone.rays[v][i] + Rat(sw) * cone.rays[w][i];
                    try {
                        frames[v] =
                            frame_at(map, ray_to_double(primitive_ray(p)), j, opt.gap_floor);
                        break;
                    } catch (const Error&) {
                        continue;
                    }
                }
            }
        }
    }
    parallel_for(ne, [&](int e) {
        const auto& s = cx.cell(1, e);
        if (s[0] == cone.apex || s[1] == cone.apex) return;
        if (!frames[s[0]] || !frames[s[1]]) {
            state[e] = -1;
            return;
        }
        if (on_locus[s[0]] || on_locus[s[1]]) {
            // straight-segment subdivision would dive into the locus point;
            // accept only a decisive single-step overlap here
            double d = overlap_det(*frames[s[0]], *frames[s[1]]);
            state[e] = std::fabs(d) >= opt.overlap_floor ? (d < 0 ? 1 : 0) : -1;
            return;
        }
        try {
            state[e] = static_cast<int8_t>(transport_recursive(
                map, j, cone.rays[s[0]], *frames[s[0]], cone.rays[s[1]], *frames[s[1]], opt, 0));
        } catch (const Error&) {
            state[e] = -1;
        }
    });

    // resolve masked base edges through incident base triangles
    std::vector<uint8_t> edge_ok(ne, 1), edge_detour(ne, 0);
    std::vector<std::vector<int>> tri_of_edge(ne);
    for (int t = 0; t < cx.count(2); ++t) {
        const auto& s = cx.cell(2, t);
        if (s[0] == cone.apex || s[1] == cone.apex || s[2] == cone.apex) continue;
        for (int omit = 0; omit < 3; ++omit) {
            std::vector<int> f;
            for (int i = 0; i < 3; ++i)
                if (i != omit) f.push_back(s[i]);
            tri_of_edge[cx.index_of(1, f)].push_back(t);
        }
    }
    for (int e = 0; e < ne; ++e) {
        if (state[e] >= 0) continue;
        ++out.masked_edges;
        edge_ok[e] = 0;
        const auto& s = cx.cell(1, e);
        std::vector<int> cand;
        for (int t : tri_of_edge[e]) {
            const auto& ts = cx.cell(2, t);
            for (int v : ts)
                if (v != s[0] && v != s[1]) cand.push_back(v);
        }
        if (!frames[s[0]] || !frames[s[1]])
            fail(ErrKind::StratumResolution,
                 "no usable frame gauge at a locus vertex; refine the mesh");
        std::optional<int> got;
        bool conflict = false;
        for (int w : cand) {
            auto bit = detour_bit(map, j, cone, *frames[s[0]], *frames[s[1]],
                                  on_locus[s[0]] != 0, on_locus[s[1]] != 0, s[0], s[1], w, opt);
            if (!bit) continue;
            if (!got)
                got = bit;
            else if (*got != *bit)
                conflict = true;
        }
        if (!got)
            fail(ErrKind::StratumResolution,
                 "masked edge admits no detour at level " + std::to_string(j) +
                     "; refine the mesh");
        if (conflict)
            fail(ErrKind::StratumResolution,
                 "detours disagree across a masked edge at level " + std::to_string(j) +
                     "; refine the mesh");
        ++out.detoured_edges;
        edge_detour[e] = 1;
        state[e] = static_cast<int8_t>(*got);
    }

    for (int e = 0; e < ne; ++e)
        if (state[e] == 1) out.edge_bits.set(e, true);
    out.values = coboundary(cx, out.edge_bits, 1);

    // subcomplex certified inside the open-gap region: no apex, all edges
    // held without detour, all 2-faces holonomy-free
    std::vector<uint8_t> vin(cone.vertex_count(), 1);
    vin[cone.apex] = 0;
    for (int v = 0; v < cone.vertex_count(); ++v)
        if (v != cone.apex && (!frames[v] || on_locus[v])) vin[v] = 0;
    out.gap_subcomplex = SubMask::full_subcomplex(cx, vin);
    for (int e = 0; e < ne; ++e)
        if (!edge_ok[e] || edge_detour[e]) out.gap_subcomplex.in[1][e] = 0;
    if (cx.top_dim >= 2)
        for (int t = 0; t < cx.count(2); ++t)
            if (out.values.get(t)) out.gap_subcomplex.in[2][t] = 0;
    // close downward consistency upward: a simplex stays only if all faces stayed
    for (int d = 2; d <= cx.top_dim; ++d) {
        auto faces = facet_indices(cx, d);
        for (int i = 0; i < cx.count(d); ++i) {
            if (!out.gap_subcomplex.in[d][i]) continue;
            for (int f : faces[i])
                if (!out.gap_subcomplex.in[d - 1][f]) {
                    out.gap_subcomplex.in[d][i] = 0;
                    break;
                }
        }
    }
    return out;
}

namespace {

struct SectionMachine {
    const QuadraticMap& map;
    int mu;
    std::vector<std::vector<double>> trivial;  // mu-2 ambient vectors
    std::vector<double> probe;                 // section source
    std::vector<std::vector<double>> generic;  // frame seeds at barycenters

    /* basis of the residual rank-2 subbundle fiber at omega, or nullopt on
       section degeneracy */
    std::optional<std::array<std::vector<double>, 2>> fiber_frame(
        const std::vector<double>& omega) const {
        auto vecs = eig_top(omega);
        if (!vecs) return std::nullopt;
        // Gram-Schmidt: projected trivial sections first, then complete from
        // projected generic seeds
        std::vector<std::vector<double>> basis;
        auto add = [&](std::vector<double> v, double floor) {
            for (const auto& b : basis) {
                double d = dot(v, b);
                for (size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
            }
            double n = std::sqrt(dot(v, v));
            if (n < floor) return false;
            for (auto& x : v) x /= n;
            basis.push_back(std::move(v));
            return true;
        };
        for (const auto& u : trivial)
            if (!add(project(*vecs, u), 1e-4)) return std::nullopt;
        std::array<std::vector<double>, 2> frame;
        int found = 0;
        for (const auto& g : generic) {
            if (found == 2) break;
            auto v = project(*vecs, g);
            if (add(std::move(v), 1e-6)) frame[found++] = basis.back();
        }
        if (found < 2) return std::nullopt;
        return frame;
    }

    /* the residual section at omega: projection of the probe into the
       rank-2 complement */
    std::optional<std::vector<double>> section(const std::vector<double>& omega) const {
        auto vecs = eig_top(omega);
        if (!vecs) return std::nullopt;
        std::vector<std::vector<double>> basis;
        auto add = [&](std::vector<double> v, double floor) {
            for (const auto& b : basis) {
                double d = dot(v, b);
                for (size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
            }
            double n = std::sqrt(dot(v, v));
            if (n < floor) return false;
            for (auto& x : v) x /= n;
            basis.push_back(std::move(v));
            return true;
        };
        for (const auto& u : trivial)
            if (!add(project(*vecs, u), 1e-4)) return std::nullopt;
        // t = P_E probe - sum <s_i, probe> s_i
        auto t = project(*vecs, probe);
        for (const auto& b : basis) {
            double d = dot(t, b);
            for (size_t i = 0; i < t.size(); ++i) t[i] -= d * b[i];
        }
        return t;
    }

    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }

private:
    std::optional<std::vector<std::vector<double>>> eig_top(
        const std::vector<double>& omega) const {
        const int n1 = map.n + 1;
        auto shadow = pencil_shadow(map, omega);
        JacobiEigen eig = jacobi_eigen(shadow, n1);
        // constant index keeps lambda_mu > 0 >= lambda_mu+1
        if (eig.values[mu - 1] <= 0) return std::nullopt;
        return std::vector<std::vector<double>>(eig.vectors.begin(), eig.vectors.begin() + mu);
    }

    std::vector<double> project(const std::vector<std::vector<double>>& basis,
                                const std::vector<double>& u) const {
        std::vector<double> out(u.size(), 0.0);
        for (const auto& b : basis) {
            double d = dot(b, u);
            for (size_t i = 0; i < u.size(); ++i) out[i] += d * b[i];
        }
        return out;
    }
};

std::vector<double> unit_comb(const std::vector<double>& a, const std::vector<double>& b,
                              const std::vector<double>& c, double x, double y, double z) {
    std::vector<double> v(a.size());
    double n = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] = x * a[i] + y * b[i] + z * c[i];
        n += v[i] * v[i];
    }
    n = std::sqrt(n);
    for (auto& w : v) w /= n;
    return v;
}

struct WindingFail {};

/* Boundary winding of the residual section in the fixed barycenter
   trivialization, or nullopt if the walk hits a floor. Steps are accepted
   only when both the turning angle and the chord relative to the section
   norm are small, which keeps the principal-value angle increments honest. */
std::optional<int> walk_boundary(const SectionMachine& sm, const std::vector<double>& a,
                                 const std::vector<double>& b, const std::vector<double>& c) {
    auto bary = unit_comb(a, b, c, 1, 1, 1);
    auto frame = sm.fiber_frame(bary);
    if (!frame) return std::nullopt;

    auto tau = [&](const std::vector<double>& omega) -> std::optional<std::array<double, 2>> {
        auto t = sm.section(omega);
        if (!t) return std::nullopt;
        return std::array<double, 2>{SectionMachine::dot(*t, (*frame)[0]),
                                     SectionMachine::dot(*t, (*frame)[1])};
    };

    // Sides are sampled by symmetric recursive bisection, so the sample set
    // on a shared edge is identical from both incident triangles and no
    // sliver between the two sampled polylines can hide a zero.
    struct SideWalk {
        const std::function<std::optional<std::array<double, 2>>(const std::vector<double>&)>& f;
        const std::vector<double>&p, &q;
        bool ok = true;

        std::optional<std::array<double, 2>> at(double t) const {
            return f(unit_comb(p, q, p, 1 - t, t, 0));
        }
        double seg(double t0, const std::array<double, 2>& v0, double t1,
                   const std::array<double, 2>& v1, int depth) {
            if (!ok) return 0;
            double n0 = std::hypot(v0[0], v0[1]);
            double n1 = std::hypot(v1[0], v1[1]);
            if (n0 < 1e-9 || n1 < 1e-9) {
                ok = false;
                return 0;
            }
            double chord = std::hypot(v1[0] - v0[0], v1[1] - v0[1]);
            double d = std::atan2(v1[1], v1[0]) - std::atan2(v0[1], v0[0]);
            while (d > M_PI) d -= 2 * M_PI;
            while (d < -M_PI) d += 2 * M_PI;
            if (std::fabs(d) <= 0.35 && chord <= 0.4 * std::min(n0, n1)) return d;
            if (depth >= 18) {
                ok = false;
                return 0;
            }
            double tm = (t0 + t1) / 2;
            auto vm = at(tm);
            if (!vm) {
                ok = false;
                return 0;
            }
            return seg(t0, v0, tm, *vm, depth + 1) + seg(tm, *vm, t1, v1, depth + 1);
        }
    };

    std::function<std::optional<std::array<double, 2>>(const std::vector<double>&)> f = tau;
    const std::vector<double>* corners[4] = {&a, &b, &c, &a};
    double total = 0;
    for (int side = 0; side < 3; ++side) {
        SideWalk walk{f, *corners[side], *corners[side + 1]};
        // fixed coarse grid, refined symmetrically
        const int coarse = 8;
        std::optional<std::array<double, 2>> vals[coarse + 1];
        for (int i = 0; i <= coarse; ++i) {
            vals[i] = walk.at(static_cast<double>(i) / coarse);
            if (!vals[i]) return std::nullopt;
        }
        for (int i = 0; i < coarse; ++i) {
            total += walk.seg(static_cast<double>(i) / coarse, *vals[i],
                              static_cast<double>(i + 1) / coarse, *vals[i + 1], 0);
            if (!walk.ok) return std::nullopt;
        }
    }
    double w = total / (2 * M_PI);
    long rounded = std::lround(w);
    if (std::fabs(w - static_cast<double>(rounded)) > 0.1) return std::nullopt;
    return static_cast<int>(rounded);
}

/* Winding with a two-scale consistency check: the triangle's own walk must
   agree with the sum over its four children, else refine. */
int triangle_winding(const SectionMachine& sm, const std::vector<double>& a,
                     const std::vector<double>& b, const std::vector<double>& c, int depth) {
    if (depth >= 7) throw WindingFail{};
    auto ab = unit_comb(a, b, c, 1, 1, 0);
    auto ac = unit_comb(a, b, c, 1, 0, 1);
    auto bc = unit_comb(a, b, c, 0, 1, 1);

    auto parent = walk_boundary(sm, a, b, c);
    auto c0 = walk_boundary(sm, a, ab, ac);
    auto c1 = walk_boundary(sm, ab, b, bc);
    auto c2 = walk_boundary(sm, ac, bc, c);
    auto c3 = walk_boundary(sm, ab, bc, ac);
    if (parent && c0 && c1 && c2 && c3 && *parent == *c0 + *c1 + *c2 + *c3) return *parent;

    return triangle_winding(sm, a, ab, ac, depth + 1) +
           triangle_winding(sm, ab, b, bc, depth + 1) +
           triangle_winding(sm, ac, bc, c, depth + 1) +
           triangle_winding(sm, ab, bc, ac, depth + 1);
}

}  // namespace

int sw_top_constant_index(const OmegaComplex& mesh, const QuadraticMap& map, int mu,
                          const FrameOptions& opt) {
    require(mesh.labeled(), ErrKind::Internal, "sw evaluation needs labels");
    require(mesh.apex < 0, ErrKind::Internal, "sw evaluation runs on the base mesh");
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (mesh.labels[v].pos != mu)
            fail(ErrKind::ConstantIndex, "index function is not constant on the mesh");
    require(mesh.sphere_like, ErrKind::ConstantIndex,
            "constant-index evaluation needs the full sphere");
    const int k = mesh.k;
    require(k == 1 || k == 2, ErrKind::UnsupportedDimension,
            "top Stiefel-Whitney evaluation supports k in {1,2}");
    require(mu >= 1 && mu <= map.n, ErrKind::Range, "mu out of range");

    if (k == 1) {
        auto w1 = w1_cochain(mesh, map, mu, opt);
        require(w1.masked_count == 0, ErrKind::Degeneracy,
                "gap collapsed on a constant-index loop");
        int bit = 0;
        for (int e = 0; e < mesh.cx.count(1); ++e) bit ^= w1.bits.get(e) ? 1 : 0;
        return bit;
    }

    // the residual splitting is random, and only the zero-count parity is an
    // invariant of it; two independent splittings must agree before the
    // parity is reported
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n1 = map.n + 1;
    int last = -1;
    for (int attempt = 0; attempt < 2 * opt.retry_budget; ++attempt) {
        SectionMachine sm{map, mu, {}, {}, {}};
        for (int i = 0; i < mu - 2; ++i) {
            std::vector<double> u(n1);
            for (auto& x : u) x = gauss(rng);
            sm.trivial.push_back(std::move(u));
        }
        sm.probe.resize(n1);
        for (auto& x : sm.probe) x = gauss(rng);
        for (int i = 0; i < 4; ++i) {
            std::vector<double> g(n1);
            for (auto& x : g) x = gauss(rng);
            sm.generic.push_back(std::move(g));
        }
        try {
            int total = 0;
            for (int t = 0; t < mesh.cx.count(2); ++t) {
                const auto& s = mesh.cx.cell(2, t);
                total += triangle_winding(sm, mesh.unit[s[0]], mesh.unit[s[1]],
                                          mesh.unit[s[2]], 0);
            }
            if (std::getenv("QTOP_DEBUG_SW"))
                std::fprintf(stderr, "[sw] attempt=%d euler-total=%d\n", attempt, total);
            int parity = ((total % 2) + 2) % 2;
            if (parity == last) return parity;
            last = parity;
        } catch (const WindingFail&) {
            continue;
        }
    }
    fail(ErrKind::Degeneracy, "section degeneracy persisted through the retry budget");
}

}  // namespace qtop
