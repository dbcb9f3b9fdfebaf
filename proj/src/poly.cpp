#include "qtop/poly.hpp"

namespace qtop {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool poly_is_zero(const Poly& p) {
    for (const Rat& c : p)
        if (c != 0) return false;
    return true;
}

int poly_degree(const Poly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

Rat poly_eval(const Poly& p, const Rat& x) {
    Rat v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    return poly_trim(std::move(d));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    Poly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return poly_trim(std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    return poly_trim(std::move(c));
}

Poly poly_mod(Poly a, const Poly& b) {
    a = poly_trim(std::move(a));
    Poly bb = poly_trim(b);
    require(!bb.empty(), ErrKind::Internal, "poly_mod by zero");
    while (a.size() >= bb.size() && !a.empty()) {
        Rat f = a.back() / bb.back();
        size_t shift = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i) a[i + shift] -= f * bb[i];
        a = poly_trim(std::move(a));
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;
    }
    return a;
}

Poly poly_squarefree(const Poly& p) {
    Poly pt = poly_trim(p);
    if (pt.size() <= 1) return pt;
    Poly g = poly_gcd(pt, poly_derivative(pt));
    if (g.size() <= 1) return pt;
    // exact division pt / g
    Poly q;
    Poly rem = pt;
    int dq = static_cast<int>(pt.size() - g.size());
    q.assign(dq + 1, Rat(0));
    while (static_cast<int>(rem.size()) >= static_cast<int>(g.size()) && !rem.empty()) {
        Rat f = rem.back() / g.back();
        size_t shift = rem.size() - g.size();
        q[shift] = f;
        for (size_t i = 0; i < g.size(); ++i) rem[i + shift] -= f * g[i];
        rem = poly_trim(std::move(rem));
    }
    require(rem.empty(), ErrKind::Internal, "squarefree division not exact");
    return poly_trim(std::move(q));
}

Poly poly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    // Newton form, expanded to the monomial basis
    const size_t n = xs.size();
    require(ys.size() == n && n > 0, ErrKind::Internal, "interpolate: bad inputs");
    std::vector<Rat> coef = ys;  // divided differences
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    Poly p{coef[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        // p = p * (t - xs[i]) + coef[i]
        Poly q(p.size() + 1, Rat(0));
        for (size_t j = 0; j < p.size(); ++j) {
            q[j + 1] += p[j];
            q[j] -= xs[i] * p[j];
        }
        q[0] += coef[i];
        p = std::move(q);
    }
    return poly_trim(std::move(p));
}

SturmChain::SturmChain(const Poly& squarefree) {
    Poly p = poly_trim(squarefree);
    require(!p.empty(), ErrKind::Internal, "sturm of zero polynomial");
    chain.push_back(p);
    Poly d = poly_derivative(p);
    if (!d.empty()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().empty()) {
        Poly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
}

int SturmChain::sign_changes(const Rat& x) const {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        Rat v = poly_eval(p, x);
        int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmChain::count(const Rat& a, const Rat& b) const {
    return sign_changes(a) - sign_changes(b);
}

static Poly deflate_root(const Poly& p, const Rat& r) {
    // exact division by (t - r)
    Poly q(p.size() - 1, Rat(0));
    Rat carry = 0;
    for (size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry * r;
        q[i - 1] = carry;
    }
    require(p[0] + carry * r == 0, ErrKind::Internal, "deflate: not a root");
    return poly_trim(std::move(q));
}

std::vector<RootInterval> isolate_roots(const Poly& squarefree, const Rat& lo, const Rat& hi) {
    std::vector<RootInterval> out;
    Poly p = poly_trim(squarefree);
    // peel off any rational roots discovered during bisection and restart
    for (bool restart = true; restart;) {
        restart = false;
        if (p.size() <= 1) break;
        if (poly_eval(p, lo) == 0) { p = deflate_root(p, lo); restart = true; continue; }
        if (poly_eval(p, hi) == 0) { p = deflate_root(p, hi); restart = true; continue; }
        SturmChain sturm(p);
        std::vector<std::pair<Rat, Rat>> stack{{lo, hi}}, found;
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            // endpoints are non-roots by construction, so (a, b] counts roots
            // strictly inside (a, b)
            int cnt = sturm.count(a, b);
            if (cnt == 0) continue;
            if (cnt == 1) {
                found.push_back({a, b});
                continue;
            }
            Rat mid = (a + b) / 2;
            if (poly_eval(p, mid) == 0) {
                out.push_back(RootInterval{mid, mid, true});
                p = deflate_root(p, mid);
                restart = true;
                break;
            }
            stack.push_back({a, mid});
            stack.push_back({mid, b});
        }
        if (!restart)
            for (auto& [a, b] : found) out.push_back(RootInterval{a, b, false});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

void tighten_interval(const SturmChain& sturm, Rat& lo, Rat& hi, int rounds) {
    for (int r = 0; r < rounds; ++r) {
        Rat mid = (lo + hi) / 2;
        if (poly_eval(sturm.chain[0], mid) == 0) {
            // the root is exactly mid; shrink to a tiny interval around it
            Rat eps = (hi - lo) / 1000;
            lo = mid - eps;
            hi = mid + eps;
            return;
        }
        if (sturm.count(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
}

int sign_at_root(const Poly& p, const Poly& phi, const SturmChain& sturm, Rat lo, Rat hi) {
    Poly pt = poly_trim(p);
    if (pt.empty()) return 0;
    Poly g = poly_gcd(pt, phi);
    if (poly_degree(g) >= 1) {
        SturmChain gs(g);
        if (gs.count(lo, hi) > 0) return 0;  // p vanishes at the root
    }
    // p has constant sign near the root once the interval avoids p's roots
    Poly psf = poly_squarefree(pt);
    SturmChain ps(psf);
    for (int guard = 0; guard < 512; ++guard) {
        if (ps.count(lo, hi) == 0 && poly_eval(pt, lo) != 0 && poly_eval(pt, hi) != 0) break;
        tighten_interval(sturm, lo, hi, 1);
    }
    Rat v = poly_eval(pt, (lo + hi) / 2);
    int s = (v > 0) - (v < 0);
    require(s != 0, ErrKind::Internal, "sign_at_root: unresolved sign");
    return s;
}

Rat det_exact(RatMat m) {
    require(m.rows == m.cols, ErrKind::Dimension, "det of non-square matrix");
    Rat det = 1;
    const int n = m.rows;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m.at(r, c) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (m.at(r, c) == 0) continue;
            Rat f = m.at(r, c) / m.at(c, c);
            for (int j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
        }
    }
    return det;
}

Poly pencil_det_poly(const RatMat& A, const RatMat& B) {
    const int n = A.rows;
    std::vector<Rat> xs, ys;
    for (int i = 0; i <= n; ++i) {
        Rat t(i, 1);
        RatMat M(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M.at(r, c) = (1 - t) * A.at(r, c) + t * B.at(r, c);
        xs.push_back(t);
        ys.push_back(det_exact(std::move(M)));
    }
    return poly_interpolate(xs, ys);
}

}  // namespace qtop
