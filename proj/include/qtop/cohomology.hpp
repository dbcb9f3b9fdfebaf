#pragma once

#include <memory>
#include <vector>

#include "qtop/complex.hpp"
#include "qtop/z2.hpp"

namespace qtop {

/* Standard simplicial boundary over GF(2): rows index (d-1)-simplices,
   columns index d-simplices. */
Z2Matrix boundary_matrix(const SimplicialComplex& cx, int d);

/* Z2 Betti numbers b_0..b_topdim. */
std::vector<int> betti(const SimplicialComplex& cx);

/* For each d-simplex, the indices of its (d-1)-faces. */
std::vector<std::vector<int>> facet_indices(const SimplicialComplex& cx, int d);

/* delta(c) for a degree-d cochain on the full complex; relative cochains
   (vanishing on a subcomplex) stay relative automatically. */
BitVec coboundary(const SimplicialComplex& cx, const BitVec& c, int d);

/* Alexander-Whitney front/back cup product of cochains of degrees i and j.
   Degrees beyond the complex dimension give the zero cochain. */
BitVec cup_product(const SimplicialComplex& cx, const BitVec& a, int i, const BitVec& b, int j);

/* The subcomplex selected by a mask, as a standalone complex (vertex ids
   are preserved). */
SimplicialComplex restrict_complex(const SimplicialComplex& cx, const SubMask& mask);

/* Relative GF(2) cohomology of the pair (cx, A) with representative
   cocycles and decomposition data for expressing cocycles in the stored
   basis. All degrees are computed at construction. */
class PairCohomology {
public:
    PairCohomology(const SimplicialComplex& cx, SubMask A);

    int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int d) const {
        return (d >= 0 && d < static_cast<int>(dims_.size())) ? dims_[d] : 0;
    }
    /* Representatives as full-length cochains (zero on A). */
    const std::vector<BitVec>& representatives(int d) const { return reps_[d]; }

    /* Coefficients of a relative cocycle over the degree-d basis.
       Internal error if the input is not a relative cocycle of the pair. */
    BitVec express(int d, const BitVec& cocycle) const;

    const SubMask& subcomplex() const { return A_; }
    const SimplicialComplex& complex() const { return *cx_; }

private:
    const SimplicialComplex* cx_;
    SubMask A_;
    std::vector<int> dims_;
    std::vector<std::vector<int>> support_;      // per degree: simplices not in A
    std::vector<std::vector<int>> support_pos_;  // per degree: full index -> support slot
    std::vector<std::vector<BitVec>> reps_;
    std::vector<std::unique_ptr<Z2Span>> span_;  // [boundaries | representatives]
    std::vector<int> n_boundary_;

    BitVec compress(int d, const BitVec& full) const;
};

}  // namespace qtop
