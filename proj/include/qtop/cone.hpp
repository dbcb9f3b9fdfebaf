#pragma once

#include <vector>

#include "qtop/matrix.hpp"

namespace qtop {

/* Finitely generated cone. `generators` are rays (cone = nonnegative span,
   lineality encoded as +/- ray pairs); `facets` are outer normals with the
   convention  x in cone  =>  <a, x> <= 0  for every facet normal a.
   An empty generator list means the zero cone. */
struct PolyhedralCone {
    int ambient = 0;
    std::vector<RatVec> generators;
    std::vector<RatVec> facets;
};

inline bool in_cone(const PolyhedralCone& c, const RatVec& x) {
    for (const auto& a : c.facets)
        if (dot(a, x) > 0) return false;
    return true;
}

/* Extreme rays (plus +/- lineality basis) of { x : <a_i, x> <= 0 }, by
   incremental double description with a final extremality prune. Exact. */
std::vector<RatVec> enumerate_rays(const std::vector<RatVec>& facets, int ambient);

PolyhedralCone cone_from_generators(int ambient, std::vector<RatVec> gens, int dim_cap = 4);

PolyhedralCone zero_cone(int ambient);

/* K -> K°. Generators of K become the facet normals of K°; generators of
   K° are enumerated exactly. Ambient dimensions above the cap are refused. */
PolyhedralCone dual_cone(const PolyhedralCone& K, int dim_cap = 4);

/* rank of the span of the cone's generators (dimension of the cone). */
int cone_dim(const PolyhedralCone& c);

}  // namespace qtop
