#include "qtop/matrix.hpp"

namespace qtop {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat mat_mul(const RatMat& A, const RatMat& B) {
    require(A.cols == B.rows, ErrKind::Dimension, "mat_mul: inner dimension mismatch");
    RatMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Rat& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

RatMat mat_transpose(const RatMat& A) {
    RatMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

RatVec mat_vec(const RatMat& A, const RatVec& x) {
    require(static_cast<int>(x.size()) == A.cols, ErrKind::Dimension, "mat_vec: length mismatch");
    RatVec y(A.rows, Rat(0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0) y[i] += A.at(i, j) * x[j];
    return y;
}

RatMat congruence(const RatMat& A, const RatMat& B) {
    return mat_mul(mat_transpose(B), mat_mul(A, B));
}

int mat_rank(RatMat A) {
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int piv = -1;
        for (int i = r; i < A.rows; ++i)
            if (A.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(r, j));
        for (int i = r + 1; i < A.rows; ++i) {
            if (A.at(i, c) == 0) continue;
            Rat f = A.at(i, c) / A.at(r, c);
            for (int j = c; j < A.cols; ++j) A.at(i, j) -= f * A.at(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<RatVec> kernel_basis(const RatMat& A) {
    RatMat M = A;
    int n = M.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(r, j));
        Rat d = M.at(r, c);
        for (int j = 0; j < n; ++j) M.at(r, j) /= d;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (int j = 0; j < n; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(n, Rat(0));
        v[c] = 1;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -M.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMat columns_matrix(const std::vector<RatVec>& cols) {
    require(!cols.empty(), ErrKind::Dimension, "columns_matrix: empty column list");
    RatMat B(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < B.cols; ++j) {
        require(static_cast<int>(cols[j].size()) == B.rows, ErrKind::Dimension,
                "columns_matrix: ragged columns");
        for (int i = 0; i < B.rows; ++i) B.at(i, j) = cols[j][i];
    }
    return B;
}

}  // namespace qtop
