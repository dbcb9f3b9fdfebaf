#pragma once

#include <vector>

#include "qtop/errors.hpp"

namespace qtop {

/* Eigenvalues sorted descending; vectors[v] is the orthonormal eigenvector
   column for values[v], stored as n doubles. */
struct JacobiEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/* Cyclic Jacobi on a dense symmetric matrix (row-major n*n). Throws a
   numeric error carrying the residual off-diagonal norm if the sweep cap
   is hit without convergence. */
JacobiEigen jacobi_eigen(const std::vector<double>& sym, int n);

double spectral_radius_estimate(const std::vector<double>& sym, int n);

}  // namespace qtop
