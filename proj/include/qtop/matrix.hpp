#pragma once

#include <vector>

#include "qtop/rational.hpp"

namespace qtop {

/* Dense rational matrix. Sizes in this project stay small (<= ~16 square);
   everything is plain row-major storage and textbook elimination. */
struct RatMat {
    int rows = 0, cols = 0;
    RatVec a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RatMat identity(int n);
    bool operator==(const RatMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

RatMat mat_mul(const RatMat& A, const RatMat& B);
RatMat mat_transpose(const RatMat& A);
RatVec mat_vec(const RatMat& A, const RatVec& x);

/* B^T A B for symmetric A; columns of B give the restriction basis. */
RatMat congruence(const RatMat& A, const RatMat& B);

int mat_rank(RatMat A);  // by value: destructive elimination on the copy

/* Basis of { x : A x = 0 }. */
std::vector<RatVec> kernel_basis(const RatMat& A);

RatMat columns_matrix(const std::vector<RatVec>& cols);

}  // namespace qtop
