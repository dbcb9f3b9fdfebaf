#include "qtop/cone.hpp"

#include <algorithm>
#include <map>

namespace qtop {

static std::vector<RatVec> dedupe_rays(std::vector<RatVec> rays) {
    for (auto& r : rays) r = primitive_ray(r);
    std::sort(rays.begin(), rays.end(), [](const RatVec& a, const RatVec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return false;
    });
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    std::vector<RatVec> out;
    for (auto& r : rays)
        if (!is_zero_vec(r)) out.push_back(std::move(r));
    return out;
}

std::vector<RatVec> enumerate_rays(const std::vector<RatVec>& facets, int ambient) {
    std::vector<RatVec> rays;
    for (int i = 0; i < ambient; ++i) {
        RatVec e(ambient, Rat(0));
        e[i] = 1;
        rays.push_back(e);
        e[i] = -1;
        rays.push_back(e);
    }
    for (const auto& a : facets) {
        std::vector<RatVec> pos, rest;
        for (auto& r : rays) {
            if (dot(a, r) > 0)
                pos.push_back(r);
            else
                rest.push_back(r);
        }
        std::vector<RatVec> next = rest;
        for (const auto& rp : pos)
            for (const auto& rm : rest) {
                Rat dm = dot(a, rm);
                if (dm == 0) continue;
                Rat dp = dot(a, rp);
                RatVec w(ambient);
                for (int i = 0; i < ambient; ++i) w[i] = dp * rm[i] - dm * rp[i];
                next.push_back(std::move(w));
            }
        rays = dedupe_rays(std::move(next));
    }
    if (facets.empty()) return dedupe_rays(std::move(rays));

    // lineality dimension of the solution cone
    RatMat F(static_cast<int>(facets.size()), ambient);
    for (size_t i = 0; i < facets.size(); ++i)
        for (int j = 0; j < ambient; ++j) F.at(static_cast<int>(i), j) = facets[i][j];
    int lin = ambient - mat_rank(F);

    // keep lineality directions and rays active on enough facets
    std::vector<RatVec> out;
    for (const auto& r : rays) {
        std::vector<RatVec> active;
        bool in_lin = true;
        for (const auto& a : facets) {
            Rat d = dot(a, r);
            if (d == 0)
                active.push_back(a);
            else
                in_lin = false;
        }
        if (in_lin) {
            out.push_back(r);
            continue;
        }
        int need = ambient - lin - 1;
        if (need <= 0) {
            out.push_back(r);
            continue;
        }
        RatMat A(static_cast<int>(active.size()), ambient);
        for (size_t i = 0; i < active.size(); ++i)
            for (int j = 0; j < ambient; ++j) A.at(static_cast<int>(i), j) = active[i][j];
        if (!active.empty() && mat_rank(A) >= need) out.push_back(r);
    }
    return dedupe_rays(std::move(out));
}

PolyhedralCone zero_cone(int ambient) { return PolyhedralCone{ambient, {}, {}}; }

PolyhedralCone cone_from_generators(int ambient, std::vector<RatVec> gens, int dim_cap) {
    if (ambient > dim_cap)
        fail(ErrKind::UnsupportedDimension, "cone ambient dimension exceeds cap");
    PolyhedralCone c;
    c.ambient = ambient;
    for (auto& g : gens) {
        require(static_cast<int>(g.size()) == ambient, ErrKind::Dimension,
                "generator length mismatch");
        auto p = primitive_ray(g);
        if (!is_zero_vec(p)) c.generators.push_back(std::move(p));
    }
    c.generators = dedupe_rays(c.generators);
    // facets of K are the generators of K°, whose facet normals are K's generators
    if (!c.generators.empty()) c.facets = enumerate_rays(c.generators, ambient);
    return c;
}

PolyhedralCone dual_cone(const PolyhedralCone& K, int dim_cap) {
    if (K.ambient > dim_cap)
        fail(ErrKind::UnsupportedDimension, "dual_cone: ambient dimension exceeds cap");
    PolyhedralCone d;
    d.ambient = K.ambient;
    d.facets = K.generators;
    d.generators = enumerate_rays(d.facets, d.ambient);
    return d;
}

int cone_dim(const PolyhedralCone& c) {
    if (c.generators.empty()) return 0;
    RatMat G(static_cast<int>(c.generators.size()), c.ambient);
    for (size_t i = 0; i < c.generators.size(); ++i)
        for (int j = 0; j < c.ambient; ++j) G.at(static_cast<int>(i), j) = c.generators[i][j];
    return mat_rank(G);
}

}  // namespace qtop
