#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "maps.hpp"
#include "oracles.hpp"
#include "qtop/cohomology.hpp"
#include "qtop/frames.hpp"

using namespace qtop;
using namespace qtop_test;

TEST_CASE("top eigenframes") {
    auto f = top_eigenframe(QuadraticForm::diag({Rat(3), Rat(2), Rat(1)}), 2, 1e-8);
    CHECK(f.gap == doctest::Approx(1.0));
    // spans e0, e1: the third coordinates vanish
    for (const auto& col : f.cols) CHECK(std::fabs(col[2]) < 1e-9);

    CHECK_THROWS_AS(top_eigenframe(QuadraticForm::identity(3), 1, 1e-8), Error);

    auto h = hopf2_map();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        RatVec w{random_rat(rng, 10), random_rat(rng, 10), random_rat(rng, 10)};
        if (is_zero_vec(w)) continue;
        auto fr = top_eigenframe(evaluate_pencil(h, w), 2, 1e-8);
        CHECK(fr.gap > 0);
    }
}

TEST_CASE("transport signs") {
    auto f = top_eigenframe(QuadraticForm::diag({Rat(3), Rat(2), Rat(1)}), 2, 1e-8);
    CHECK(transport_sign(f, f, 0.1) == 0);
    auto g = f;
    for (auto& x : g.cols[0]) x = -x;
    CHECK(transport_sign(f, g, 0.1) == 1);

    // the tautological line over the circle of binary forms is nonorientable
    auto h1 = hopf1_map();
    auto circle = build_mesh(dual_cone(zero_cone(2)), 3);
    label_indices(circle, h1);
    FrameOptions opt;
    auto w1 = w1_cochain(circle, h1, 1, opt);
    CHECK(w1.masked_count == 0);
    int loop = 0;
    for (int e = 0; e < circle.cx.count(1); ++e) loop ^= w1.bits.get(e) ? 1 : 0;
    CHECK(loop == 1);
}

TEST_CASE("w1 edge bits of a rank-one pencil direction") {
    // two proportional forms: frames are constant wherever the gap holds
    auto q = QuadraticForm::diag({Rat(3), Rat(2), Rat(1)});
    QuadraticMap map(2, {q, q});
    auto circle = build_mesh(dual_cone(zero_cone(2)), 3);
    label_indices(circle, map);
    FrameOptions opt;
    auto w1 = w1_cochain(circle, map, 1, opt);
    for (int e = 0; e < circle.cx.count(1); ++e)
        if (w1.mask.get(e)) CHECK(!w1.bits.get(e));
}

TEST_CASE("gamma cochain of the monomial system") {
    auto p = monomial_pair_map();
    auto mesh = build_mesh(dual_cone(zero_cone(3)), 2);
    label_indices(mesh, p);
    adaptive_refine(mesh, p, 3);
    auto cone = cone_complex(mesh);
    FrameOptions opt;
    auto gamma = gamma_cochain(cone, p, 1, opt);

    // closed, and vanishing on the certified open-gap subcomplex
    CHECK(!coboundary(cone.cx, gamma.values, 2).any());
    for (int t = 0; t < cone.cx.count(2); ++t)
        if (gamma.gap_subcomplex.contains(2, t)) CHECK(!gamma.values.get(t));

    // the level-1 gap closes once inside each component of the deeper
    // stratum: the holonomy support parity per component is odd
    auto prod = [&](int v) {
        return Rat(mesh.rays[v][0] * mesh.rays[v][1] * mesh.rays[v][2]);
    };
    int comp_signs[2][2][2] = {};
    int parity[2][2][2] = {};
    for (int t = 0; t < cone.cx.count(2); ++t) {
        const auto& s = cone.cx.cell(2, t);
        if (s[0] == cone.apex || s[1] == cone.apex || s[2] == cone.apex) continue;
        bool inside = true;
        for (int v : s)
            if (prod(v) >= 0) { inside = false; break; }
        if (!inside) continue;
        int sx = mesh.rays[s[0]][0] > 0 ? 1 : 0;
        int sy = mesh.rays[s[0]][1] > 0 ? 1 : 0;
        int sz = mesh.rays[s[0]][2] > 0 ? 1 : 0;
        comp_signs[sx][sy][sz] = 1;
        if (gamma.values.get(t)) parity[sx][sy][sz] ^= 1;
    }
    int components = 0, odd = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                components += comp_signs[x][y][z];
                odd += parity[x][y][z];
            }
    CHECK(components == 4);
    CHECK(odd == 4);
}

TEST_CASE("frame gauge invariance of loop holonomy") {
    auto h = hopf2_map();
    auto mesh = build_mesh(dual_cone(zero_cone(3)), 1);
    label_indices(mesh, h);
    FrameOptions opt;
    auto w1 = w1_cochain(mesh, h, 2, opt);
    REQUIRE(w1.masked_count == 0);

    // loop holonomies around triangles, recomputed after randomly
    // re-gauging each vertex frame (column sign flips and swaps)
    std::mt19937_64 rng(909);
    std::vector<EigenFrame> frames;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        frames.push_back(top_eigenframe(evaluate_pencil(h, mesh.rays[v]), 2, opt.gap_floor));

    auto loop_bit = [&](const std::vector<EigenFrame>& fr, int t) {
        const auto& s = mesh.cx.cell(2, t);
        int b = transport_sign(fr[s[0]], fr[s[1]], 0.05) ^
                transport_sign(fr[s[1]], fr[s[2]], 0.05) ^ transport_sign(fr[s[0]], fr[s[2]], 0.05);
        return b;
    };
    std::vector<int> reference;
    for (int t = 0; t < mesh.cx.count(2); ++t) reference.push_back(loop_bit(frames, t));
    for (int trial = 0; trial < 100; ++trial) {
        auto gauged = frames;
        for (auto& f : gauged) {
            if (rng() & 1) std::swap(f.cols[0], f.cols[1]);
            if (rng() & 1)
                for (auto& x : f.cols[0]) x = -x;
            if (rng() & 1)
                for (auto& x : f.cols[1]) x = -x;
        }
        for (int t = 0; t < mesh.cx.count(2); ++t) CHECK(loop_bit(gauged, t) == reference[t]);
    }
}

TEST_CASE("subdivision invariance of loop holonomy") {
    auto h1 = hopf1_map();
    FrameOptions opt;
    int prev = -1;
    for (int depth = 2; depth <= 4; ++depth) {
        auto circle = build_mesh(dual_cone(zero_cone(2)), depth);
        label_indices(circle, h1);
        auto w1 = w1_cochain(circle, h1, 1, opt);
        REQUIRE(w1.masked_count == 0);
        int loop = 0;
        for (int e = 0; e < circle.cx.count(1); ++e) loop ^= w1.bits.get(e) ? 1 : 0;
        if (prev >= 0) CHECK(loop == prev);
        prev = loop;
    }
}

TEST_CASE("top Stiefel-Whitney evaluations") {
    FrameOptions opt;

    auto h1 = hopf1_map();
    auto circle = build_mesh(dual_cone(zero_cone(2)), 3);
    label_indices(circle, h1);
    CHECK(sw_top_constant_index(circle, h1, 1, opt) == 1);

    auto h2 = hopf2_map();
    auto sphere = build_mesh(dual_cone(zero_cone(3)), 2);
    label_indices(sphere, h2);
    CHECK(sw_top_constant_index(sphere, h2, 2, opt) == 1);

    auto h22 = nhopf2_map(2);
    auto sphere2 = build_mesh(dual_cone(zero_cone(3)), 2);
    label_indices(sphere2, h22);
    CHECK(sw_top_constant_index(sphere2, h22, 4, opt) == 0);

    auto gv = gamma_v_map();
    auto sphere3 = build_mesh(dual_cone(zero_cone(3)), 2);
    label_indices(sphere3, gv);
    for (int v = 0; v < sphere3.vertex_count(); ++v) CHECK(sphere3.labels[v].pos == 2);
    CHECK(sw_top_constant_index(sphere3, gv, 2, opt) == 0);

    // non-constant input refuses
    auto p = monomial_pair_map();
    auto mesh = build_mesh(dual_cone(zero_cone(3)), 1);
    label_indices(mesh, p);
    CHECK_THROWS_AS(sw_top_constant_index(mesh, p, 2, opt), Error);
}

TEST_CASE("whitney sum parities for direct sums") {
    // w2 of the m-fold sum of the Hopf plane bundle is m mod 2
    FrameOptions opt;
    for (int m = 1; m <= 3; ++m) {
        auto map = nhopf2_map(m);
        auto sphere = build_mesh(dual_cone(zero_cone(3)), 2);
        label_indices(sphere, map);
        CHECK(sw_top_constant_index(sphere, map, 2 * m, opt) == m % 2);
    }
}
