#pragma once

#include <vector>

#include "qtop/matrix.hpp"

namespace qtop {

/* Dense univariate polynomials over Q, coefficient p[i] on t^i. */
using Poly = std::vector<Rat>;

Poly poly_trim(Poly p);
bool poly_is_zero(const Poly& p);
int poly_degree(const Poly& p);  // -1 for zero
Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mod(Poly a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_squarefree(const Poly& p);

/* Lagrange interpolation through (x_i, y_i), exact. */
Poly poly_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

/* Sturm chain utilities. */
struct SturmChain {
    std::vector<Poly> chain;
    explicit SturmChain(const Poly& squarefree);
    int sign_changes(const Rat& x) const;
    /* distinct roots in (a, b] */
    int count(const Rat& a, const Rat& b) const;
};

struct RootInterval {
    Rat lo, hi;        // open interval holding exactly one root, or
    bool exact;        // an exact rational root at lo
};

/* Isolating intervals for the distinct real roots of a squarefree
   polynomial inside (lo, hi). Rational roots are returned exact. */
std::vector<RootInterval> isolate_roots(const Poly& squarefree, const Rat& lo, const Rat& hi);

/* Shrink an isolating interval of phi by Sturm bisection. */
void tighten_interval(const SturmChain& sturm, Rat& lo, Rat& hi, int rounds);

/* Sign of p at the unique root of phi inside (lo, hi): -1, 0, +1. */
int sign_at_root(const Poly& p, const Poly& phi, const SturmChain& sturm, Rat lo, Rat hi);

/* det((1-t) A + t B) as a polynomial in t, by interpolation. */
Poly pencil_det_poly(const RatMat& A, const RatMat& B);

Rat det_exact(RatMat m);

}  // namespace qtop
