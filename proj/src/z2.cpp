#include "qtop/z2.hpp"

namespace qtop {

int Z2Matrix::rank() const {
    std::vector<BitVec> m = row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i].get(c)) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        for (int i = 0; i < rows; ++i)
            if (i != r && m[i].get(c)) m[i] ^= m[r];
        ++r;
    }
    return r;
}

Z2Matrix Z2Matrix::transposed() const {
    Z2Matrix T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (get(i, j)) T.set(j, i, true);
    return T;
}

Z2Matrix z2_mul(const Z2Matrix& A, const Z2Matrix& B) {
    require(A.cols == B.rows, ErrKind::Dimension, "z2_mul: inner dimension mismatch");
    Z2Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k)
            if (A.get(i, k)) C.row[i] ^= B.row[k];
    return C;
}

bool Z2Span::insert(const BitVec& v) {
    require(v.n == width_, ErrKind::Dimension, "z2span: width mismatch");
    require(inserted_ < cap_, ErrKind::Internal, "z2span: insert capacity exceeded");
    BitVec cur = v;
    BitVec combo(cap_);
    combo.set(inserted_, true);
    ++inserted_;
    for (size_t i = 0; i < rows_.size(); ++i)
        if (cur.get(pivots_[i])) {
            cur ^= rows_[i];
            combo ^= combos_[i];
        }
    int p = cur.lowest_set();
    if (p < 0) return false;
    rows_.push_back(std::move(cur));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
    return true;
}

Z2Span::Reduction Z2Span::reduce(const BitVec& v) const {
    require(v.n == width_, ErrKind::Dimension, "z2span: width mismatch");
    Reduction r{v, BitVec(cap_)};
    for (size_t i = 0; i < rows_.size(); ++i)
        if (r.residue.get(pivots_[i])) {
            r.residue ^= rows_[i];
            r.combo ^= combos_[i];
        }
    return r;
}

}  // namespace qtop
