#pragma once

#include <cstdint>

#include "qtop/mesh.hpp"
#include "qtop/z2.hpp"

namespace qtop {

/* Orthonormal basis of the span of the top-j eigenvectors, defined only
   where the j-th spectral gap is open. */
struct EigenFrame {
    int j = 0;
    int dim = 0;
    std::vector<std::vector<double>> cols;
    double gap = 0;
};

struct FrameOptions {
    double gap_floor = 1e-8;     // relative to the spectral radius
    double overlap_floor = 0.5;  // |det| accepted for one transport step
    int max_edge_depth = 12;     // adaptive bisection cap per edge
    int retry_budget = 8;        // random-vector retries for sections
    uint64_t seed = 1;
};

EigenFrame top_eigenframe(const QuadraticForm& form, int j, double gap_floor);

/* Orientation bit of the discrete parallel transport between two fibers:
   1 iff det(a^T b) < 0. Near-singular overlap raises an overlap error. */
int transport_sign(const EigenFrame& a, const EigenFrame& b, double overlap_floor);

/* Edge bits of w1 of the top-j eigenbundle over the labeled base mesh.
   Edges where the gap could not be held along the whole subdivided edge
   are masked out rather than failing. */
struct W1Cochain {
    int j = 0;
    BitVec bits;  // per edge index of mesh.cx
    BitVec mask;  // 1 = defined
    int masked_count = 0;
};

W1Cochain w1_cochain(const OmegaComplex& mesh, const QuadraticMap& map, int j,
                     const FrameOptions& opt);

/* The level-j holonomy two-cochain on the cone complex: the coboundary of
   the w1 edge bits extended by zero over the meridians (the apex direction
   keeps eigenvectors fixed since the hatted scalar form is the identity).
   Masked base edges get their bit from a detour path pushed into an
   incident triangle; if the two incident triangles disagree, a
   stratum-resolution error asks for refinement. */
struct GammaCochain {
    int j = 0;
    BitVec values;     // degree-2 cochain on cone.cx
    BitVec edge_bits;  // the underlying degree-1 cochain
    SubMask gap_subcomplex;  // simplices certified inside the open-gap region
    int masked_edges = 0;
    int detoured_edges = 0;
};

GammaCochain gamma_cochain(const OmegaComplex& cone, const QuadraticMap& map, int j,
                           const FrameOptions& opt);

/* Evaluation of w_k of the pulled-back top-mu eigenbundle on the
   fundamental cycle of S^k, for a constant-index system. k = 1 composes
   loop transport; k = 2 splits off mu-2 generic sections and counts the
   zeros of one more section on the residual rank-2 bundle mod 2. */
int sw_top_constant_index(const OmegaComplex& mesh, const QuadraticMap& map, int mu,
                          const FrameOptions& opt);

}  // namespace qtop
