#pragma once

#include "qtop/poly.hpp"
#include "qtop/quadratic.hpp"

namespace qtop {

/* Exact minimum of i+ over the closed pencil segment
   t |-> (1-t) (u p) + t (v p), t in [0,1].

   Between kernel points the index is locally constant and sampled at
   rational points; at each interior kernel point the index is certified
   exactly: numerically guessed positive/negative eigenspaces are
   rationalized and their definiteness at the algebraic parameter is decided
   by principal-minor sign tests, and the kernel dimension is pinned by
   minor-vanishing tests. Raises a stratum-resolution error if
   certification fails at the precision cap. */
int edge_min_index(const QuadraticMap& map, const RatVec& u, const RatVec& v);

/* Same, starting from the two endpoint pencil forms. */
int segment_min_index(const QuadraticForm& qu, const QuadraticForm& qv);

}  // namespace qtop
