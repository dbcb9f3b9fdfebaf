#pragma once

#include <vector>

#include "qtop/matrix.hpp"

namespace qtop {

/* Inertia triple (i+, i0, i-); invariant under congruence. */
struct Inertia {
    int pos = 0, zero = 0, neg = 0;
    bool operator==(const Inertia& o) const {
        return pos == o.pos && zero == o.zero && neg == o.neg;
    }
    bool operator!=(const Inertia& o) const { return !(*this == o); }
};

/* q(x) = <Qx, x> with Q an exact symmetric rational matrix; the float
   shadow is the entrywise nearest-double image, cached at construction. */
struct QuadraticForm {
    int dim = 0;
    RatMat q;
    std::vector<double> shadow;  // row-major dim*dim

    QuadraticForm() = default;
    explicit QuadraticForm(RatMat m);

    static QuadraticForm zero(int n);
    static QuadraticForm identity(int n);
    static QuadraticForm diag(const RatVec& d);

    double shadow_at(int i, int j) const { return shadow[static_cast<size_t>(i) * dim + j]; }
};

QuadraticForm negate(const QuadraticForm& f);

/* The system p = (p^0, ..., p^k) of k+1 forms on R^{n+1}. */
struct QuadraticMap {
    int n = 0, k = 0;
    std::vector<QuadraticForm> forms;

    QuadraticMap() = default;
    QuadraticMap(int n_, std::vector<QuadraticForm> fs);

    /* Exact values (p^0(x), ..., p^k(x)). */
    RatVec evaluate(const RatVec& x) const;
};

/* omega |-> sum_i omega_i p^i. Zero omega is allowed and yields the zero
   form; a length mismatch is a dimension error. */
QuadraticForm evaluate_pencil(const QuadraticMap& map, const RatVec& omega);

/* Exact inertia by rational symmetric congruence reduction. Total. */
Inertia inertia_exact(const QuadraticForm& form);

/* Eigenvalue counting on the float shadow; Jacobi backend. tol > 0. */
Inertia inertia_float(const QuadraticForm& form, double tol);

/* B^T Q B where B has the given basis vectors as columns. The basis must
   be linearly independent (rank error otherwise). */
QuadraticForm restrict_to_subspace(const QuadraticForm& form, const std::vector<RatVec>& basis);

/* (-q0, p^0, ..., p^k) with q0 = identity; k goes up by one. */
QuadraticMap hat_extend(const QuadraticMap& map);

/* rk(L), which equals i+ of the block form [[0, L], [L^T, 0]]. */
int inertia_bilinear_shortcut(const RatMat& L);

/* The block form above (scaled by 1/2 so that q(z,w) = z^T L w). */
QuadraticForm bilinear_block_form(const RatMat& L);

}  // namespace qtop
