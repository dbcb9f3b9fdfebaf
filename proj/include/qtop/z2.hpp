#pragma once

#include <cstdint>
#include <vector>

#include "qtop/errors.hpp"

namespace qtop {

/* Packed GF(2) vector. */
struct BitVec {
    int n = 0;
    std::vector<uint64_t> w;

    BitVec() = default;
    explicit BitVec(int n_) : n(n_), w((n_ + 63) / 64, 0) {}

    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = 1ULL << (i & 63);
        if (v)
            w[i >> 6] |= m;
        else
            w[i >> 6] &= ~m;
    }
    void flip(int i) { w[i >> 6] ^= 1ULL << (i & 63); }
    BitVec& operator^=(const BitVec& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
        return *this;
    }
    bool any() const {
        for (uint64_t x : w)
            if (x) return true;
        return false;
    }
    int popcount() const {
        int c = 0;
        for (uint64_t x : w) c += __builtin_popcountll(x);
        return c;
    }
    int lowest_set() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<int>(i * 64) + __builtin_ctzll(w[i]);
        return -1;
    }
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
};

/* Bit matrix stored as packed rows. */
struct Z2Matrix {
    int rows = 0, cols = 0;
    std::vector<BitVec> row;

    Z2Matrix() = default;
    Z2Matrix(int r, int c) : rows(r), cols(c), row(r, BitVec(c)) {}

    bool get(int i, int j) const { return row[i].get(j); }
    void set(int i, int j, bool v) { row[i].set(j, v); }

    int rank() const;
    Z2Matrix transposed() const;
};

Z2Matrix z2_mul(const Z2Matrix& A, const Z2Matrix& B);

/* Incremental GF(2) row space with combination tracking: every reduction
   is expressed over the vectors inserted so far. */
class Z2Span {
public:
    Z2Span(int width, int max_inserts) : width_(width), cap_(max_inserts) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    int inserted() const { return inserted_; }

    /* Returns true if the vector enlarged the span. */
    bool insert(const BitVec& v);

    /* Residue of v against the span plus the combination over inserted
       vectors that produces v - residue. */
    struct Reduction {
        BitVec residue;
        BitVec combo;
    };
    Reduction reduce(const BitVec& v) const;

    bool contains(const BitVec& v) const { return !reduce(v).residue.any(); }

private:
    int width_, cap_, inserted_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> combos_;
    std::vector<int> pivots_;
};

}  // namespace qtop
