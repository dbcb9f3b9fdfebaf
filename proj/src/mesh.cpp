#include "qtop/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qtop/edge_index.hpp"
#include "qtop/parallel.hpp"

namespace qtop {

namespace {

struct RayLess {
    bool operator()(const RatVec& a, const RatVec& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return false;
    }
};

/* Mutable mesh state; vertex ids stay stable across clipping, subdivision
   and refinement rounds. */
struct MeshData {
    int ambient = 0;
    std::vector<RatVec> rays;
    std::map<RatVec, int, RayLess> index;
    std::vector<std::vector<int>> cells;

    int add_ray(const RatVec& r) {
        RatVec p = primitive_ray(r);
        require(!is_zero_vec(p), ErrKind::Internal, "mesh vertex ray is zero");
        auto it = index.find(p);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(rays.size());
        rays.push_back(p);
        index.emplace(std::move(p), id);
        return id;
    }
    int midpoint(int a, int b) {
        RatVec m(rays[a].size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = rays[a][i] + rays[b][i];
        return add_ray(m);
    }
};

const int kIcosaCoords[12][3] = {
    {-809, 0, -500}, {-809, 0, 500}, {-500, -809, 0}, {-500, 809, 0},
    {0, -500, -809}, {0, -500, 809}, {0, 500, -809},  {0, 500, 809},
    {500, -809, 0},  {500, 809, 0},  {809, 0, -500},  {809, 0, 500}};

const int kIcosaFaces[20][3] = {{0, 1, 2},  {0, 1, 3},  {0, 2, 4},  {0, 3, 6},  {0, 4, 6},
                                {1, 2, 5},  {1, 3, 7},  {1, 5, 7},  {2, 4, 8},  {2, 5, 8},
                                {3, 6, 9},  {3, 7, 9},  {4, 6, 10}, {4, 8, 10}, {5, 7, 11},
                                {5, 8, 11}, {6, 9, 10}, {7, 9, 11}, {8, 10, 11}, {9, 10, 11}};

MeshData base_sphere(int ambient) {
    MeshData m;
    m.ambient = ambient;
    const int k = ambient - 1;
    if (k == 0) {
        int a = m.add_ray({Rat(1)});
        int b = m.add_ray({Rat(-1)});
        m.cells.push_back({a});
        m.cells.push_back({b});
    } else if (k == 1) {
        int e0 = m.add_ray({Rat(1), Rat(0)});
        int e1 = m.add_ray({Rat(0), Rat(1)});
        int e2 = m.add_ray({Rat(-1), Rat(0)});
        int e3 = m.add_ray({Rat(0), Rat(-1)});
        m.cells = {{e0, e1}, {e1, e2}, {e2, e3}, {e3, e0}};
    } else if (k == 2) {
        int ids[12];
        for (int i = 0; i < 12; ++i)
            ids[i] = m.add_ray(
                {Rat(kIcosaCoords[i][0]), Rat(kIcosaCoords[i][1]), Rat(kIcosaCoords[i][2])});
        for (const auto& f : kIcosaFaces) m.cells.push_back({ids[f[0]], ids[f[1]], ids[f[2]]});
    } else if (k == 3) {
        int plus[4], minus[4];
        for (int i = 0; i < 4; ++i) {
            RatVec e(4, Rat(0));
            e[i] = 1;
            plus[i] = m.add_ray(e);
            e[i] = -1;
            minus[i] = m.add_ray(e);
        }
        for (int s = 0; s < 16; ++s) {
            std::vector<int> tet(4);
            for (int i = 0; i < 4; ++i) tet[i] = (s >> i) & 1 ? minus[i] : plus[i];
            m.cells.push_back(std::move(tet));
        }
    } else {
        fail(ErrKind::UnsupportedDimension, "sphere meshes exist only for k <= 3");
    }
    return m;
}

/* ---- exact clipping against { x : <a, x> <= 0 } ---- */

struct Clipper {
    MeshData& m;
    const RatVec& a;
    std::map<std::pair<int, int>, int> cuts;
    std::vector<int> sign;  // per vertex: -1, 0, +1

    Clipper(MeshData& md, const RatVec& plane) : m(md), a(plane) {
        sign.resize(m.rays.size());
        for (size_t v = 0; v < m.rays.size(); ++v) {
            Rat d = dot(a, m.rays[v]);
            sign[v] = (d > 0) - (d < 0);
        }
    }

    int cut(int u, int v) {
        auto key = std::minmax(u, v);
        auto it = cuts.find(key);
        if (it != cuts.end()) return it->second;
        Rat du = dot(a, m.rays[u]), dv = dot(a, m.rays[v]);
        RatVec w(m.rays[u].size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = du * m.rays[v][i] - dv * m.rays[u][i];
        int id = m.add_ray(w);
        if (static_cast<int>(sign.size()) <= id) sign.resize(id + 1, 0);
        sign[id] = 0;
        cuts.emplace(key, id);
        return id;
    }

    /* canonical diagonal for a quad (x, y, cut_y, cut_x) sitting inside an
       original face: determined by the global ids of x and y only, so the
       two tets sharing that face agree. Returns the two triangles. */
    void quad_tris(int x, int y, int cy, int cx_, std::vector<std::vector<int>>& out) {
        if (x < y) {
            out.push_back({x, y, cy});
            out.push_back({x, cy, cx_});
        } else {
            out.push_back({x, y, cx_});
            out.push_back({y, cy, cx_});
        }
    }

    void clip_cell(const std::vector<int>& c, std::vector<std::vector<int>>& keep) {
        int P = 0, M = 0;
        for (int v : c) {
            P += sign[v] > 0;
            M += sign[v] < 0;
        }
        if (P == 0) {
            keep.push_back(c);
            return;
        }
        if (M == 0) return;  // intersection is a face on the plane, no volume kept
        switch (c.size()) {
            case 2: {
                int u = (sign[c[0]] < 0) ? c[0] : c[1];
                int p = (u == c[0]) ? c[1] : c[0];
                keep.push_back({u, cut(p, u)});
                return;
            }
            case 3:
                clip_triangle(c, keep);
                return;
            case 4:
                clip_tet(c, keep);
                return;
            default:
                fail(ErrKind::Internal, "clip: unsupported cell dimension");
        }
    }

    void clip_triangle(const std::vector<int>& c, std::vector<std::vector<int>>& keep) {
        std::vector<int> pos, neg, zer;
        for (int v : c) (sign[v] > 0 ? pos : (sign[v] < 0 ? neg : zer)).push_back(v);
        if (pos.size() == 1) {
            int p = pos[0];
            if (neg.size() == 2) {
                int u = neg[0], v = neg[1];
                quad_tris(u, v, cut(p, v), cut(p, u), keep);
            } else {  // one negative, one zero
                int u = neg[0], z = zer[0];
                keep.push_back({u, z, cut(p, u)});
            }
        } else {  // two positive
            if (neg.size() == 1) keep.push_back({neg[0], cut(pos[0], neg[0]), cut(pos[1], neg[0])});
            // two positive + zero vertex: degenerate, dropped
        }
    }

    void prism(const std::array<int, 3>& bot, const std::array<int, 3>& top,
               const std::array<std::pair<int, int>, 3>& diag,
               std::vector<std::vector<int>>& keep) {
        // diag[i] is the chosen diagonal of the quad (bot[i], bot[i+1], top[i+1], top[i])
        std::vector<std::vector<int>> boundary;
        boundary.push_back({bot[0], bot[1], bot[2]});
        boundary.push_back({top[0], top[1], top[2]});
        for (int i = 0; i < 3; ++i) {
            int b0 = bot[i], b1 = bot[(i + 1) % 3], t1 = top[(i + 1) % 3], t0 = top[i];
            auto [d0, d1] = diag[i];
            // diagonal is (b0,t1) or (b1,t0)
            if ((d0 == b0 && d1 == t1) || (d0 == t1 && d1 == b0)) {
                boundary.push_back({b0, b1, t1});
                boundary.push_back({b0, t1, t0});
            } else {
                boundary.push_back({b0, b1, t0});
                boundary.push_back({b1, t1, t0});
            }
        }
        // fan vertex: endpoint of two diagonals, if any (Schoenhardt patterns
        // have none and need a Steiner point)
        std::map<int, int> touch;
        for (auto& d : diag) {
            ++touch[d.first];
            ++touch[d.second];
        }
        int fan = -1;
        for (auto& [v, n] : touch)
            if (n >= 2) { fan = v; break; }
        if (fan >= 0) {
            for (auto& tri : boundary) {
                if (tri[0] == fan || tri[1] == fan || tri[2] == fan) continue;
                keep.push_back({fan, tri[0], tri[1], tri[2]});
            }
            return;
        }
        RatVec centroid(m.rays[bot[0]].size(), Rat(0));
        for (int v : {bot[0], bot[1], bot[2], top[0], top[1], top[2]})
            for (size_t i = 0; i < centroid.size(); ++i) centroid[i] += m.rays[v][i];
        int cid = m.add_ray(centroid);
        if (static_cast<int>(sign.size()) <= cid) sign.resize(cid + 1, 0);
        sign[cid] = -1;  // strictly inside the kept side
        for (auto& tri : boundary) keep.push_back({cid, tri[0], tri[1], tri[2]});
    }

    std::pair<int, int> face_diag(int x, int y, int cy, int cx_) {
        return (x < y) ? std::make_pair(x, cy) : std::make_pair(y, cx_);
    }

    void clip_tet(const std::vector<int>& c, std::vector<std::vector<int>>& keep) {
        std::vector<int> pos, neg, zer;
        for (int v : c) (sign[v] > 0 ? pos : (sign[v] < 0 ? neg : zer)).push_back(v);
        const size_t P = pos.size(), M = neg.size(), Z = zer.size();
        if (P == 3 && M == 1) {
            int u = neg[0];
            keep.push_back({u, cut(pos[0], u), cut(pos[1], u), cut(pos[2], u)});
        } else if (P == 2 && M == 1 && Z == 1) {
            int u = neg[0];
            keep.push_back({zer[0], u, cut(pos[0], u), cut(pos[1], u)});
        } else if (P == 1 && M == 1 && Z == 2) {
            keep.push_back({zer[0], zer[1], neg[0], cut(pos[0], neg[0])});
        } else if (P == 1 && M == 2 && Z == 1) {
            int p = pos[0], u = neg[0], v = neg[1], z = zer[0];
            std::vector<std::vector<int>> tris;
            quad_tris(u, v, cut(p, v), cut(p, u), tris);
            for (auto& t : tris) keep.push_back({z, t[0], t[1], t[2]});
        } else if (P == 1 && M == 3) {
            int p = pos[0];
            std::array<int, 3> bot{neg[0], neg[1], neg[2]};
            std::array<int, 3> top{cut(p, neg[0]), cut(p, neg[1]), cut(p, neg[2])};
            std::array<std::pair<int, int>, 3> diag;
            for (int i = 0; i < 3; ++i)
                diag[i] = face_diag(bot[i], bot[(i + 1) % 3], top[(i + 1) % 3], top[i]);
            prism(bot, top, diag, keep);
        } else if (P == 2 && M == 2) {
            int p1 = pos[0], p2 = pos[1], u1 = neg[0], u2 = neg[1];
            std::array<int, 3> bot{u1, cut(p1, u1), cut(p2, u1)};
            std::array<int, 3> top{u2, cut(p1, u2), cut(p2, u2)};
            std::array<std::pair<int, int>, 3> diag;
            // quad (u1, c11, c12... rail pairs: (u1,u2), (c(p1,u1), c(p1,u2)), (c(p2,u1), c(p2,u2))
            // quad 0 between rails 0-1 lies in original face (p1, u1, u2)
            diag[0] = face_diag(u1, u2, top[1], bot[1]);
            // quad 1 between rails 1-2 is the free cross-section on the plane
            // quad 2 between rails 2-0 lies in original face (p2, u1, u2)
            diag[2] = face_diag(u2, u1, bot[2], top[2]);
            // choose the free diagonal so some vertex carries two diagonals
            std::map<int, int> touch;
            ++touch[diag[0].first];
            ++touch[diag[0].second];
            ++touch[diag[2].first];
            ++touch[diag[2].second];
            std::pair<int, int> candA{bot[1], top[2]}, candB{bot[2], top[1]};
            diag[1] = (touch.count(candA.first) || touch.count(candA.second)) ? candA : candB;
            prism(bot, top, diag, keep);
        }
        // P>0 with M=0 handled by caller; P=3,Z=1 / P=2,Z=2 / P=1,Z=3 are
        // degenerate intersections (a face on the plane), dropped
    }
};

void clip_mesh(MeshData& m, const RatVec& plane) {
    Clipper cl(m, plane);
    std::vector<std::vector<int>> keep;
    for (const auto& c : m.cells) cl.clip_cell(c, keep);
    m.cells = std::move(keep);
}

void subdivide(MeshData& m) {
    std::vector<std::vector<int>> next;
    for (const auto& c : m.cells) {
        switch (c.size()) {
            case 1:
                next.push_back(c);
                break;
            case 2: {
                int mid = m.midpoint(c[0], c[1]);
                next.push_back({c[0], mid});
                next.push_back({mid, c[1]});
                break;
            }
            case 3: {
                int m01 = m.midpoint(c[0], c[1]);
                int m02 = m.midpoint(c[0], c[2]);
                int m12 = m.midpoint(c[1], c[2]);
                next.push_back({c[0], m01, m02});
                next.push_back({c[1], m01, m12});
                next.push_back({c[2], m02, m12});
                next.push_back({m01, m02, m12});
                break;
            }
            case 4: {
                int a = c[0], b = c[1], cc = c[2], d = c[3];
                int mab = m.midpoint(a, b), mac = m.midpoint(a, cc), mad = m.midpoint(a, d);
                int mbc = m.midpoint(b, cc), mbd = m.midpoint(b, d), mcd = m.midpoint(cc, d);
                next.push_back({a, mab, mac, mad});
                next.push_back({b, mab, mbc, mbd});
                next.push_back({cc, mac, mbc, mcd});
                next.push_back({d, mad, mbd, mcd});
                // central octahedron around the (mab, mcd) diagonal
                next.push_back({mab, mcd, mac, mad});
                next.push_back({mab, mcd, mad, mbd});
                next.push_back({mab, mcd, mbd, mbc});
                next.push_back({mab, mcd, mbc, mac});
                break;
            }
            default:
                fail(ErrKind::Internal, "subdivide: unsupported cell dimension");
        }
    }
    m.cells = std::move(next);
}

std::vector<double> normalize(const RatVec& r) {
    std::vector<double> u(r.size());
    double n = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        u[i] = to_double(r[i]);
        n += u[i] * u[i];
    }
    n = std::sqrt(n);
    if (n > 0)
        for (auto& x : u) x /= n;
    return u;
}

OmegaComplex finalize(MeshData&& m, int k, bool sphere_like, int depth) {
    // drop vertices orphaned by clipping and renumber densely
    std::vector<uint8_t> used(m.rays.size(), 0);
    for (const auto& c : m.cells)
        for (int v : c) used[v] = 1;
    std::vector<int> remap(m.rays.size(), -1);
    OmegaComplex out;
    out.k = k;
    for (size_t v = 0; v < m.rays.size(); ++v)
        if (used[v]) {
            remap[v] = static_cast<int>(out.rays.size());
            out.rays.push_back(std::move(m.rays[v]));
        }
    for (auto& c : m.cells)
        for (int& v : c) v = remap[v];
    out.unit.reserve(out.rays.size());
    for (const auto& r : out.rays) out.unit.push_back(normalize(r));
    out.cx = SimplicialComplex::from_cells(std::move(m.cells));
    out.sphere_like = sphere_like;
    out.refinement_depth = depth;
    return out;
}

/* Row basis of the span of the generators, as ambient column vectors. */
std::vector<RatVec> span_basis(const std::vector<RatVec>& gens, int ambient) {
    RatMat G(static_cast<int>(gens.size()), ambient);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < ambient; ++j) G.at(static_cast<int>(i), j) = gens[i][j];
    std::vector<RatVec> basis;
    int r = 0;
    for (int c = 0; c < ambient && r < G.rows; ++c) {
        int piv = -1;
        for (int i = r; i < G.rows; ++i)
            if (G.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < ambient; ++j) std::swap(G.at(piv, j), G.at(r, j));
        for (int i = r + 1; i < G.rows; ++i) {
            if (G.at(i, c) == 0) continue;
            Rat f = G.at(i, c) / G.at(r, c);
            for (int j = c; j < ambient; ++j) G.at(i, j) -= f * G.at(r, j);
        }
        RatVec row(ambient);
        for (int j = 0; j < ambient; ++j) row[j] = G.at(r, j);
        basis.push_back(primitive_ray(row));
        ++r;
    }
    return basis;
}

MeshData build_region(const std::vector<RatVec>& facets, const std::vector<RatVec>& generators,
                      int ambient, int depth, bool& sphere_like);

MeshData build_full_dim(const std::vector<RatVec>& facets, int ambient, int depth) {
    MeshData m = base_sphere(ambient);
    for (const auto& a : facets) clip_mesh(m, a);
    for (int d = 0; d < depth; ++d) subdivide(m);
    return m;
}

MeshData build_region(const std::vector<RatVec>& facets, const std::vector<RatVec>& generators,
                      int ambient, int depth, bool& sphere_like) {
    sphere_like = facets.empty();
    if (facets.empty()) {
        MeshData m = base_sphere(ambient);
        for (int d = 0; d < depth; ++d) subdivide(m);
        return m;
    }
    if (ambient - 1 == 0) {
        MeshData m;
        m.ambient = 1;
        for (const Rat& s : {Rat(1), Rat(-1)}) {
            RatVec r{s};
            bool ok = true;
            for (const auto& a : facets)
                if (dot(a, r) > 0) { ok = false; break; }
            if (ok) m.cells.push_back({m.add_ray(r)});
        }
        return m;
    }
    RatMat G(static_cast<int>(generators.size()), ambient);
    for (size_t i = 0; i < generators.size(); ++i)
        for (int j = 0; j < ambient; ++j) G.at(static_cast<int>(i), j) = generators[i][j];
    int dim = generators.empty() ? 0 : mat_rank(G);
    if (dim == 0) {
        MeshData m;
        m.ambient = ambient;
        return m;  // empty region
    }
    if (dim == ambient) return build_full_dim(facets, ambient, depth);

    // region lives in a proper subspace: mesh there and map back
    std::vector<RatVec> basis = span_basis(generators, ambient);
    RatMat B = columns_matrix(basis);  // ambient x dim
    std::vector<RatVec> sub_facets;
    for (const auto& a : facets) {
        RatVec ap(dim);
        bool nonzero = false;
        for (int j = 0; j < dim; ++j) {
            ap[j] = dot(a, basis[j]);
            nonzero = nonzero || ap[j] != 0;
        }
        if (nonzero) sub_facets.push_back(primitive_ray(ap));
    }
    std::vector<RatVec> sub_gens;
    // generators in subspace coordinates: solve B x = g (B has full column rank)
    for (const auto& g : generators) {
        RatMat aug(ambient, dim + 1);
        for (int i = 0; i < ambient; ++i) {
            for (int j = 0; j < dim; ++j) aug.at(i, j) = B.at(i, j);
            aug.at(i, dim) = g[i];
        }
        auto ker = kernel_basis(aug);
        RatVec x(dim);
        bool found = false;
        for (const auto& v : ker)
            if (v[dim] != 0) {
                for (int j = 0; j < dim; ++j) x[j] = -v[j] / v[dim];
                found = true;
                break;
            }
        require(found, ErrKind::Internal, "generator not in its own span");
        sub_gens.push_back(std::move(x));
    }
    bool sub_sphere = false;
    MeshData sub = build_region(sub_facets, sub_gens, dim, depth, sub_sphere);
    MeshData m;
    m.ambient = ambient;
    std::vector<int> remap(sub.rays.size(), -1);
    for (size_t v = 0; v < sub.rays.size(); ++v) remap[v] = m.add_ray(mat_vec(B, sub.rays[v]));
    for (auto& c : sub.cells) {
        for (int& v : c) v = remap[v];
        m.cells.push_back(c);
    }
    return m;
}

}  // namespace

int OmegaComplex::stratum_tag(int d, int idx) const {
    require(labeled(), ErrKind::Internal, "stratum_tag on unlabeled mesh");
    int tag = labeled_total;
    for (int v : cx.cell(d, idx)) tag = std::min(tag, labels[v].pos);
    return tag;
}

OmegaComplex build_mesh(const PolyhedralCone& k_dual, int depth) {
    const int k = k_dual.ambient - 1;
    if (k < 0 || k > 3) fail(ErrKind::UnsupportedDimension, "build_mesh supports k in {0,1,2,3}");
    require(depth >= 0, ErrKind::Range, "mesh depth must be nonnegative");
    bool sphere_like = false;
    MeshData m = build_region(k_dual.facets, k_dual.generators, k_dual.ambient, depth, sphere_like);
    return finalize(std::move(m), k, sphere_like, depth);
}

void label_indices(OmegaComplex& mesh, const QuadraticMap& map) {
    require(mesh.k == map.k, ErrKind::Dimension, "mesh and map live on different spheres");
    require(mesh.apex < 0, ErrKind::Internal, "label the base mesh before coning");
    mesh.labels.assign(mesh.rays.size(), Inertia{});
    parallel_for(static_cast<int>(mesh.rays.size()), [&](int v) {
        mesh.labels[v] = inertia_exact(evaluate_pencil(map, mesh.rays[v]));
    });
    mesh.labeled_total = map.n + 1;
}

void label_restricted(OmegaComplex& mesh, const QuadraticMap& map,
                      const std::vector<RatVec>& v_basis) {
    require(mesh.k == map.k, ErrKind::Dimension, "mesh and map live on different spheres");
    require(static_cast<int>(v_basis.size()) == map.n, ErrKind::Rank,
            "hyperplane basis must have n vectors");
    RatMat B = columns_matrix(v_basis);
    require(mat_rank(B) == map.n, ErrKind::Rank, "hyperplane basis is rank deficient");
    mesh.labels_v.assign(mesh.rays.size(), Inertia{});
    parallel_for(static_cast<int>(mesh.rays.size()), [&](int v) {
        auto pencil = evaluate_pencil(map, mesh.rays[v]);
        mesh.labels_v[v] = inertia_exact(QuadraticForm(congruence(pencil.q, B)));
    });
}

void compute_edge_minima(OmegaComplex& mesh, const QuadraticMap& map,
                         const std::vector<RatVec>* v_basis) {
    require(mesh.labeled(), ErrKind::Internal, "compute_edge_minima needs a labeled mesh");
    require(mesh.apex < 0, ErrKind::Internal, "edge minima belong to the base mesh");
    QuadraticMap restricted;
    if (v_basis) {
        RatMat B = columns_matrix(*v_basis);
        std::vector<QuadraticForm> fs;
        for (const auto& f : map.forms) fs.emplace_back(congruence(f.q, B));
        restricted = QuadraticMap(map.n - 1, std::move(fs));
    }

    std::vector<std::pair<int, int>> todo;
    for (int e = 0; e < mesh.cx.count(1); ++e) {
        const auto& s = mesh.cx.cell(1, e);
        std::pair<int, int> key{s[0], s[1]};
        if (!mesh.edge_min.count(key)) todo.push_back(key);
    }
    std::vector<int> mins(todo.size()), mins_v(todo.size());
    parallel_for(static_cast<int>(todo.size()), [&](int t) {
        auto [u, v] = todo[t];
        int cap = std::min(mesh.labels[u].pos, mesh.labels[v].pos);
        mins[t] = (cap == 0) ? 0 : edge_min_index(map, mesh.rays[u], mesh.rays[v]);
        if (v_basis) {
            int cap_v = std::min(mesh.labels_v[u].pos, mesh.labels_v[v].pos);
            mins_v[t] = (cap_v == 0) ? 0
                                     : edge_min_index(restricted, mesh.rays[u], mesh.rays[v]);
        }
    });
    for (size_t t = 0; t < todo.size(); ++t) {
        mesh.edge_min[todo[t]] = mins[t];
        if (v_basis) mesh.edge_min_v[todo[t]] = mins_v[t];
    }
}

namespace {

int edge_floor(const OmegaComplex& mesh, int u, int v, bool restricted) {
    const auto& labels = restricted ? mesh.labels_v : mesh.labels;
    int cap = std::min(labels[u].pos, labels[v].pos);
    const auto& table = restricted ? mesh.edge_min_v : mesh.edge_min;
    auto it = table.find({std::min(u, v), std::max(u, v)});
    return it == table.end() ? cap : std::min(cap, it->second);
}

bool cell_mixed(const OmegaComplex& mesh, const std::vector<int>& cell, bool use_v) {
    int p0 = mesh.labels[cell[0]].pos;
    for (int v : cell)
        if (mesh.labels[v].pos != p0) return true;
    if (use_v) {
        int q0 = mesh.labels_v[cell[0]].pos;
        for (int v : cell)
            if (mesh.labels_v[v].pos != q0) return true;
    }
    for (size_t s = 0; s < cell.size(); ++s)
        for (size_t t = s + 1; t < cell.size(); ++t) {
            int u = cell[s], v = cell[t];
            if (edge_floor(mesh, u, v, false) <
                std::min(mesh.labels[u].pos, mesh.labels[v].pos))
                return true;
            if (use_v && edge_floor(mesh, u, v, true) <
                             std::min(mesh.labels_v[u].pos, mesh.labels_v[v].pos))
                return true;
        }
    return false;
}

SubMask level_subcomplex(const OmegaComplex& mesh, int j, bool restricted) {
    const auto& labels = restricted ? mesh.labels_v : mesh.labels;
    const auto& cx = mesh.cx;
    SubMask m;
    m.in.resize(std::max(cx.top_dim + 1, 0));
    for (int d = 0; d <= cx.top_dim; ++d) {
        m.in[d].assign(cx.count(d), 0);
        for (int i = 0; i < cx.count(d); ++i) {
            const auto& s = cx.cell(d, i);
            bool ok = true;
            for (int v : s)
                if (labels[v].pos < j) { ok = false; break; }
            for (size_t a = 0; ok && a < s.size(); ++a)
                for (size_t b = a + 1; ok && b < s.size(); ++b)
                    if (edge_floor(mesh, s[a], s[b], restricted) < j) ok = false;
            m.in[d][i] = ok ? 1 : 0;
        }
    }
    return m;
}

}  // namespace

void adaptive_refine(OmegaComplex& mesh, const QuadraticMap& map, int max_extra_depth,
                     const std::vector<RatVec>* v_basis) {
    require(mesh.labeled(), ErrKind::Internal, "adaptive_refine needs a labeled mesh");
    require(mesh.apex < 0, ErrKind::Internal, "refine the base mesh before coning");
    const bool use_v = v_basis != nullptr;
    if (use_v && mesh.labels_v.empty()) label_restricted(mesh, map, *v_basis);

    RatMat VB;
    QuadraticMap restricted;
    if (use_v) {
        VB = columns_matrix(*v_basis);
        std::vector<QuadraticForm> fs;
        for (const auto& f : map.forms) fs.emplace_back(congruence(f.q, VB));
        restricted = QuadraticMap(map.n - 1, std::move(fs));
    }

    MeshData m;
    m.ambient = mesh.k + 1;
    for (const auto& r : mesh.rays) m.add_ray(r);
    // meshes here are pure per construction, so the top cells carry everything
    if (mesh.cx.top_dim >= 0)
        for (int i = 0; i < mesh.cx.count(mesh.cx.top_dim); ++i)
            m.cells.push_back(mesh.cx.cell(mesh.cx.top_dim, i));

    auto label_new = [&](int from) {
        int to = static_cast<int>(m.rays.size());
        mesh.labels.resize(to);
        if (use_v) mesh.labels_v.resize(to);
        parallel_for(to - from, [&](int t) {
            int v = from + t;
            auto pencil = evaluate_pencil(map, m.rays[v]);
            mesh.labels[v] = inertia_exact(pencil);
            if (use_v) mesh.labels_v[v] = inertia_exact(QuadraticForm(congruence(pencil.q, VB)));
        });
    };

    auto refresh_edge_minima = [&]() {
        std::vector<std::pair<int, int>> todo;
        std::map<std::pair<int, int>, bool> seen;
        for (const auto& c : m.cells)
            for (size_t s = 0; s < c.size(); ++s)
                for (size_t t = s + 1; t < c.size(); ++t) {
                    auto key = std::minmax(c[s], c[t]);
                    if (mesh.edge_min.count(key) || seen.count(key)) continue;
                    seen[key] = true;
                    todo.push_back(key);
                }
        std::vector<int> mins(todo.size()), mins_v(todo.size());
        parallel_for(static_cast<int>(todo.size()), [&](int t) {
            auto [u, v] = todo[t];
            int cap = std::min(mesh.labels[u].pos, mesh.labels[v].pos);
            mins[t] = (cap == 0) ? 0 : edge_min_index(map, m.rays[u], m.rays[v]);
            if (use_v) {
                int cap_v = std::min(mesh.labels_v[u].pos, mesh.labels_v[v].pos);
                mins_v[t] =
                    (cap_v == 0) ? 0 : edge_min_index(restricted, m.rays[u], m.rays[v]);
            }
        });
        for (size_t t = 0; t < todo.size(); ++t) {
            mesh.edge_min[todo[t]] = mins[t];
            if (use_v) mesh.edge_min_v[todo[t]] = mins_v[t];
        }
    };

    int rounds = 0;
    while (rounds < max_extra_depth) {
        refresh_edge_minima();
        std::vector<size_t> mixed;
        for (size_t i = 0; i < m.cells.size(); ++i)
            if (m.cells[i].size() >= 2 && cell_mixed(mesh, m.cells[i], use_v)) mixed.push_back(i);
        if (mixed.empty()) break;
        ++rounds;
        int before = static_cast<int>(m.rays.size());

        if (m.cells[mixed[0]].size() == 4) {
            // volume meshes refine uniformly (red split keeps conformity)
            subdivide(m);
            label_new(before);
            continue;
        }
        // edge-marking with red/green closure for surface and curve meshes
        std::map<std::pair<int, int>, bool> marked;
        auto mark = [&](int a, int b) { marked[std::minmax(a, b)] = true; };
        for (size_t i : mixed) {
            const auto& c = m.cells[i];
            for (size_t s = 0; s < c.size(); ++s)
                for (size_t t = s + 1; t < c.size(); ++t) mark(c[s], c[t]);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : m.cells) {
                if (c.size() != 3) continue;
                int cnt = marked.count(std::minmax(c[0], c[1])) +
                          marked.count(std::minmax(c[0], c[2])) +
                          marked.count(std::minmax(c[1], c[2]));
                if (cnt == 2) {
                    mark(c[0], c[1]);
                    mark(c[0], c[2]);
                    mark(c[1], c[2]);
                    changed = true;
                }
            }
        }
        std::vector<std::vector<int>> next;
        for (const auto& c : m.cells) {
            if (c.size() == 1) {
                next.push_back(c);
            } else if (c.size() == 2) {
                if (marked.count(std::minmax(c[0], c[1]))) {
                    int mid = m.midpoint(c[0], c[1]);
                    next.push_back({c[0], mid});
                    next.push_back({mid, c[1]});
                } else {
                    next.push_back(c);
                }
            } else {
                bool e01 = marked.count(std::minmax(c[0], c[1]));
                bool e02 = marked.count(std::minmax(c[0], c[2]));
                bool e12 = marked.count(std::minmax(c[1], c[2]));
                int cnt = e01 + e02 + e12;
                if (cnt == 0) {
                    next.push_back(c);
                } else if (cnt == 3) {
                    int m01 = m.midpoint(c[0], c[1]);
                    int m02 = m.midpoint(c[0], c[2]);
                    int m12 = m.midpoint(c[1], c[2]);
                    next.push_back({c[0], m01, m02});
                    next.push_back({c[1], m01, m12});
                    next.push_back({c[2], m02, m12});
                    next.push_back({m01, m02, m12});
                } else {  // exactly one marked edge after closure
                    int u, v, w;
                    if (e01) { u = c[0]; v = c[1]; w = c[2]; }
                    else if (e02) { u = c[0]; v = c[2]; w = c[1]; }
                    else { u = c[1]; v = c[2]; w = c[0]; }
                    int mid = m.midpoint(u, v);
                    next.push_back({u, mid, w});
                    next.push_back({mid, v, w});
                }
            }
        }
        m.cells = std::move(next);
        label_new(before);
    }

    refresh_edge_minima();
    int unstable = 0;
    for (const auto& c : m.cells)
        if (c.size() >= 2 && cell_mixed(mesh, c, use_v)) ++unstable;

    OmegaComplex out = finalize(std::move(m), mesh.k, mesh.sphere_like, mesh.refinement_depth);
    out.labels = std::move(mesh.labels);
    out.labels_v = std::move(mesh.labels_v);
    out.labeled_total = mesh.labeled_total;
    out.edge_min = std::move(mesh.edge_min);
    out.edge_min_v = std::move(mesh.edge_min_v);
    out.refine_rounds = rounds;
    out.unstable_simplices = unstable;
    mesh = std::move(out);
}

SubMask subcomplex_for(const OmegaComplex& mesh, int j) {
    require(mesh.labeled(), ErrKind::Internal, "subcomplex_for needs a labeled mesh");
    if (j < 0 || j > mesh.labeled_total)
        fail(ErrKind::Range, "stratum level out of range");
    return level_subcomplex(mesh, j, false);
}

SubMask omega_v_strata(const OmegaComplex& mesh, int j) {
    require(!mesh.labels_v.empty(), ErrKind::Internal, "restricted labels missing");
    require(j >= 1, ErrKind::Range, "restricted stratum level must be >= 1");
    return level_subcomplex(mesh, j, true);
}

OmegaComplex cone_complex(const OmegaComplex& mesh) {
    if (mesh.apex >= 0) return mesh;
    require(mesh.labeled(), ErrKind::Internal, "cone_complex needs a labeled mesh");
    OmegaComplex out;
    out.k = mesh.k;
    out.rays = mesh.rays;
    out.unit = mesh.unit;
    out.labels = mesh.labels;
    out.labels_v = mesh.labels_v;
    out.labeled_total = mesh.labeled_total;
    out.edge_min = mesh.edge_min;
    out.edge_min_v = mesh.edge_min_v;
    out.sphere_like = mesh.sphere_like;
    out.refinement_depth = mesh.refinement_depth;
    out.refine_rounds = mesh.refine_rounds;
    out.unstable_simplices = mesh.unstable_simplices;

    int apex = static_cast<int>(out.rays.size());
    out.rays.push_back(RatVec(mesh.k + 1, Rat(0)));  // hat-direction sentinel
    out.unit.push_back(std::vector<double>(mesh.k + 1, 0.0));
    out.labels.push_back(Inertia{0, 0, out.labeled_total});
    if (!out.labels_v.empty()) out.labels_v.push_back(Inertia{0, 0, out.labeled_total});
    out.apex = apex;

    std::vector<std::vector<int>> cells;
    if (mesh.cx.top_dim < 0) {
        cells.push_back({apex});
    } else {
        for (int d = 0; d <= mesh.cx.top_dim; ++d)
            for (int i = 0; i < mesh.cx.count(d); ++i) {
                auto c = mesh.cx.cell(d, i);
                if (d == mesh.cx.top_dim) cells.push_back(c);
                c.push_back(apex);
                cells.push_back(std::move(c));
            }
    }
    out.cx = SimplicialComplex::from_cells(std::move(cells));
    return out;
}

OmegaComplex subdivide_once(const OmegaComplex& mesh) {
    require(mesh.apex < 0, ErrKind::Internal, "subdivide the base mesh, not the cone");
    MeshData m;
    m.ambient = mesh.k + 1;
    for (const auto& r : mesh.rays) m.add_ray(r);
    if (mesh.cx.top_dim >= 0)
        for (int i = 0; i < mesh.cx.count(mesh.cx.top_dim); ++i)
            m.cells.push_back(mesh.cx.cell(mesh.cx.top_dim, i));
    subdivide(m);
    return finalize(std::move(m), mesh.k, mesh.sphere_like, mesh.refinement_depth + 1);
}

}  // namespace qtop
