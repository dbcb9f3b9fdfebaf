#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qtop/complex.hpp"
#include "qtop/cone.hpp"
#include "qtop/quadratic.hpp"

namespace qtop {

/* Geodesic simplicial mesh of Omega = K° ∩ S^k (and, after cone_complex,
   of its cone). Vertices carry exact rational rays; the float unit vector
   is the normalized ray. Vertex ids are the global order used by all cup
   products downstream; the apex, when present, is ordered last. */
struct OmegaComplex {
    int k = 0;  // rays live in R^{k+1}
    SimplicialComplex cx;
    std::vector<RatVec> rays;
    std::vector<std::vector<double>> unit;
    std::vector<Inertia> labels;    // i+(omega p), set by label_indices
    std::vector<Inertia> labels_v;  // i+(omega p |_V), set by label_restricted
    int labeled_total = 0;          // n+1 of the labeling map (0 = unlabeled)

    /* exact minimum of i+ over each closed edge (strata whose complement
       has empty interior are invisible to vertex labels alone) */
    std::map<std::pair<int, int>, int> edge_min;
    std::map<std::pair<int, int>, int> edge_min_v;
    int apex = -1;
    bool sphere_like = false;  // Omega is the whole S^k
    int refinement_depth = 0;  // uniform subdivision rounds applied
    int refine_rounds = 0;     // adaptive rounds performed
    int unstable_simplices = 0;

    bool labeled() const { return labeled_total > 0; }
    int vertex_count() const { return static_cast<int>(rays.size()); }
    /* min over vertices of i+ (stratum tag of a simplex). */
    int stratum_tag(int d, int idx) const;
};

/* Mesh of the dual region. k in {0,1,2,3}; k = 3 requires the full sphere
   or a mesh obtained by exact clipping (used by the hatted cross-checks).
   `depth` uniform midpoint-subdivision rounds are applied after clipping. */
OmegaComplex build_mesh(const PolyhedralCone& k_dual, int depth);

void label_indices(OmegaComplex& mesh, const QuadraticMap& map);

/* Restricted labels i+(omega p |_V); V_basis must have full rank n. */
void label_restricted(OmegaComplex& mesh, const QuadraticMap& map,
                      const std::vector<RatVec>& v_basis);

/* Exact closed-edge index minima for every current edge (and for the
   restricted pencils when v_basis is given); cached by vertex pair. */
void compute_edge_minima(OmegaComplex& mesh, const QuadraticMap& map,
                         const std::vector<RatVec>* v_basis = nullptr);

/* Bisect simplices whose vertex labels disagree or whose edge-interior
   index dips below both endpoint labels (both label families when
   restricted labels are present), relabeling new vertices exactly, until
   stable or the extra-depth cap is reached. */
void adaptive_refine(OmegaComplex& mesh, const QuadraticMap& map, int max_extra_depth,
                     const std::vector<RatVec>* v_basis = nullptr);

/* Subcomplex of simplices whose vertices all have i+ >= j and whose edges
   all keep closed-edge index minimum >= j. */
SubMask subcomplex_for(const OmegaComplex& mesh, int j);

/* Same for the restricted index i+(omega p|_V), j >= 1. */
SubMask omega_v_strata(const OmegaComplex& mesh, int j);

/* Adds the apex (direction of the hatted -q0) and all cones over existing
   simplices; idempotent. */
OmegaComplex cone_complex(const OmegaComplex& mesh);

/* One global midpoint-subdivision round (exposed for subdivision-invariance
   tests). */
OmegaComplex subdivide_once(const OmegaComplex& mesh);

}  // namespace qtop
