#pragma once

#include <cstdint>
#include <vector>

#include "qtop/errors.hpp"

namespace qtop {

/* Abstract simplicial complex. simp[d] holds the (d+1)-vertex simplices,
   each sorted ascending by the global vertex order, and the list itself is
   sorted lexicographically so faces are found by binary search. Complexes
   are built once (closure of a top-cell list) and immutable afterwards. */
struct SimplicialComplex {
    int top_dim = -1;
    std::vector<std::vector<std::vector<int>>> simp;

    int count(int d) const {
        return (d >= 0 && d <= top_dim) ? static_cast<int>(simp[d].size()) : 0;
    }
    const std::vector<int>& cell(int d, int i) const { return simp[d][i]; }
    int index_of(int d, const std::vector<int>& s) const;

    int euler_characteristic() const;

    static SimplicialComplex from_cells(std::vector<std::vector<int>> cells);
};

/* Subcomplex membership flags, one bitvector per dimension. */
struct SubMask {
    std::vector<std::vector<uint8_t>> in;

    bool contains(int d, int i) const {
        return d < static_cast<int>(in.size()) && in[d][i] != 0;
    }
    bool empty() const;
    int count(int d) const;

    /* Full subcomplex on a vertex predicate: a simplex is in iff all of its
       vertices are. */
    static SubMask full_subcomplex(const SimplicialComplex& cx, const std::vector<uint8_t>& vin);
    static SubMask none(const SimplicialComplex& cx);

    bool subset_of(const SubMask& other) const;
    SubMask unite(const SubMask& other) const;
};

}  // namespace qtop
