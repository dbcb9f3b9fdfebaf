#include "qtop/edge_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qtop/jacobi.hpp"

namespace qtop {

namespace {

RatMat blend(const RatMat& A, const RatMat& B, const Rat& t) {
    RatMat M(A.rows, A.cols);
    for (size_t i = 0; i < M.a.size(); ++i) M.a[i] = (1 - t) * A.a[i] + t * B.a[i];
    return M;
}

int inertia_pos_at(const RatMat& A, const RatMat& B, const Rat& t) {
    return inertia_exact(QuadraticForm(blend(A, B, t))).pos;
}

RatMat submatrix(const RatMat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
    RatMat S(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            S.at(static_cast<int>(i), static_cast<int>(j)) = M.at(rows[i], cols[j]);
    return S;
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - pos); ++i) {
            cur[pos] = i;
            rec(i + 1, pos + 1);
        }
    };
    if (k >= 0 && k <= n) rec(0, 0);
}

/* All minors of the given size vanish at the root of phi in (lo, hi). */
bool minors_vanish_at_root(const RatMat& A, const RatMat& B, int size, const Poly& phi,
                           const SturmChain& sturm, const Rat& lo, const Rat& hi) {
    std::vector<std::vector<int>> subs;
    subsets_of_size(A.rows, size, subs);
    for (const auto& rs : subs)
        for (const auto& cs : subs) {
            Poly m = pencil_det_poly(submatrix(A, rs, cs), submatrix(B, rs, cs));
            if (poly_is_zero(m)) continue;
            if (sign_at_root(m, phi, sturm, lo, hi) != 0) return false;
        }
    return true;
}

RatMat rationalize_columns(const std::vector<std::vector<double>>& cols, long den) {
    RatMat W(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < W.cols; ++j)
        for (int i = 0; i < W.rows; ++i) {
            Rat r(static_cast<long>(std::llround(cols[j][i] * static_cast<double>(den))), den);
            r.canonicalize();
            W.at(i, j) = r;
        }
    return W;
}

/* Leading principal minors of W^T ((1-t)A + tB) W are all strictly of the
   given sign at the root. */
bool definite_at_root(const RatMat& A, const RatMat& B, const RatMat& W, int want_sign,
                      const Poly& phi, const SturmChain& sturm, const Rat& lo, const Rat& hi) {
    RatMat MA = congruence(A, W), MB = congruence(B, W);
    for (int s = 1; s <= MA.rows; ++s) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        Poly m = pencil_det_poly(submatrix(MA, idx, idx), submatrix(MB, idx, idx));
        int expect = (want_sign > 0) ? 1 : (s % 2 == 0 ? 1 : -1);
        if (poly_is_zero(m) || sign_at_root(m, phi, sturm, lo, hi) != expect) return false;
    }
    return true;
}

/* Exact i+ at the unique root of phi inside (lo, hi). */
int index_at_root(const QuadraticForm& qu, const QuadraticForm& qv, const Poly& phi,
                  Rat lo, Rat hi) {
    const int n1 = qu.dim;
    SturmChain sturm(phi);
    const long dens[] = {1000000L, 1000000000L, 1000000000000L};
    for (int round = 0; round < 10; ++round) {
        tighten_interval(sturm, lo, hi, 6 + 4 * round);
        double t = (to_double(lo) + to_double(hi)) / 2;
        std::vector<double> shadow(qu.shadow.size());
        for (size_t i = 0; i < shadow.size(); ++i)
            shadow[i] = (1 - t) * qu.shadow[i] + t * qv.shadow[i];
        JacobiEigen eig = jacobi_eigen(shadow, n1);
        double scale = std::max(spectral_radius_estimate(shadow, n1), 1e-30);

        std::vector<int> z_candidates;
        for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
            int z = 0;
            for (double v : eig.values)
                if (std::fabs(v) <= eps * scale) ++z;
            if (z >= 1 && (z_candidates.empty() || z_candidates.back() != z))
                z_candidates.push_back(z);
        }
        for (int z : z_candidates) {
            std::vector<std::vector<double>> pos_cols, neg_cols;
            std::vector<int> order(n1);
            // eigenvalues sorted descending already
            int npos = 0;
            while (npos < n1 && eig.values[npos] > 0) ++npos;
            // treat the z smallest-magnitude values as the kernel cluster
            std::vector<int> by_mag(n1);
            for (int i = 0; i < n1; ++i) by_mag[i] = i;
            std::stable_sort(by_mag.begin(), by_mag.end(), [&](int a, int b) {
                return std::fabs(eig.values[a]) < std::fabs(eig.values[b]);
            });
            std::vector<bool> in_kernel(n1, false);
            for (int i = 0; i < z; ++i) in_kernel[by_mag[i]] = true;
            for (int i = 0; i < n1; ++i) {
                if (in_kernel[i]) continue;
                (eig.values[i] > 0 ? pos_cols : neg_cols).push_back(eig.vectors[i]);
            }
            if (static_cast<int>(pos_cols.size() + neg_cols.size()) + z != n1) continue;
            for (long den : dens) {
                // kernel dimension: all minors of size rank+1 vanish at the root
                int rank = n1 - z;
                if (z >= 2 &&
                    !minors_vanish_at_root(qu.q, qv.q, rank + 1, phi, sturm, lo, hi))
                    break;  // kernel guess too large regardless of precision
                bool ok = true;
                if (!pos_cols.empty()) {
                    RatMat Wp = rationalize_columns(pos_cols, den);
                    ok = definite_at_root(qu.q, qv.q, Wp, +1, phi, sturm, lo, hi);
                }
                if (ok && !neg_cols.empty()) {
                    RatMat Wn = rationalize_columns(neg_cols, den);
                    ok = definite_at_root(qu.q, qv.q, Wn, -1, phi, sturm, lo, hi);
                }
                if (ok) return static_cast<int>(pos_cols.size());
            }
        }
    }
    fail(ErrKind::StratumResolution,
         "could not certify the inertia index at an edge-interior kernel point; refine the mesh");
}

}  // namespace

int segment_min_index(const QuadraticForm& qu, const QuadraticForm& qv) {
    const int n1 = qu.dim;
    require(qv.dim == n1, ErrKind::Dimension, "segment endpoints of different dimension");
    int best = std::min(inertia_exact(qu).pos, inertia_exact(qv).pos);
    if (best == 0) return 0;

    // candidate parameter locus: roots of the largest not-identically-zero
    // minor scale; generically just the determinant
    Poly g = pencil_det_poly(qu.q, qv.q);
    if (poly_is_zero(g)) {
        std::vector<std::vector<int>> subs;
        for (int size = n1 - 1; size >= 1 && poly_is_zero(g); --size) {
            subs.clear();
            subsets_of_size(n1, size, subs);
            for (const auto& rs : subs) {
                for (const auto& cs : subs) {
                    g = pencil_det_poly(submatrix(qu.q, rs, cs), submatrix(qv.q, rs, cs));
                    if (!poly_is_zero(g)) break;
                }
                if (!poly_is_zero(g)) break;
            }
        }
        if (poly_is_zero(g)) return 0;  // the zero pencil
    }

    Poly phi = poly_squarefree(g);
    auto roots = isolate_roots(phi, Rat(0), Rat(1));

    // sample every open segment between kernel points (the endpoints may be
    // singular themselves, so the interior is always sampled)
    std::vector<Rat> markers{Rat(0), Rat(1)};
    for (const auto& r : roots) {
        if (r.exact) {
            markers.push_back(r.lo);
        } else {
            markers.push_back(r.lo);
            markers.push_back(r.hi);
        }
    }
    std::sort(markers.begin(), markers.end());
    markers.erase(std::unique(markers.begin(), markers.end()), markers.end());
    for (size_t i = 0; i + 1 < markers.size(); ++i) {
        Rat s = (markers[i] + markers[i + 1]) / 2;
        if (poly_eval(phi, s) == 0) continue;
        best = std::min(best, inertia_pos_at(qu.q, qv.q, s));
        if (best == 0) return 0;
    }
    for (size_t i = 1; i + 1 < markers.size(); ++i) {
        if (poly_eval(phi, markers[i]) != 0) continue;
        best = std::min(best, inertia_pos_at(qu.q, qv.q, markers[i]));
        if (best == 0) return 0;
    }

    for (const auto& r : roots) {
        if (r.exact) continue;  // handled above
        best = std::min(best, index_at_root(qu, qv, phi, r.lo, r.hi));
        if (best == 0) return 0;
    }
    return best;
}

int edge_min_index(const QuadraticMap& map, const RatVec& u, const RatVec& v) {
    return segment_min_index(evaluate_pencil(map, u), evaluate_pencil(map, v));
}

}  // namespace qtop
