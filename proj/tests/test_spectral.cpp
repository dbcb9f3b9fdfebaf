#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maps.hpp"
#include "oracles.hpp"
#include "qtop/spectral.hpp"

using namespace qtop;
using namespace qtop_test;

namespace {

struct Run {
    OmegaComplex mesh;
    OmegaComplex cone;
    SpectralTable table;
};

Run analyze(const QuadraticMap& map, int depth, int refine) {
    Run r;
    auto K = zero_cone(map.k + 1);
    r.mesh = build_mesh(dual_cone(K), depth);
    label_indices(r.mesh, map);
    adaptive_refine(r.mesh, map, refine);
    r.cone = cone_complex(r.mesh);
    r.table = assemble_E2(r.cone, map);
    FrameOptions opt;
    advance_to_infinity(r.table, r.cone, r.mesh, map, opt);
    return r;
}

std::vector<int> exact_betti(const SpectralTable& t) {
    auto rep = betti_report(t);
    std::vector<int> out;
    for (auto& e : rep.betti) {
        REQUIRE(e.exact());
        out.push_back(e.lo);
    }
    return out;
}

int cell(const SpectralTable& t, size_t page_idx, int i, int j) {
    const Page& p = t.pages.at(page_idx);
    CellInterval c = p.at(i, j);
    REQUIRE(c.exact());
    return c.lo;
}

}  // namespace

TEST_CASE("three points cut out by pairwise monomials") {
    auto run = analyze(monomial_pair_map(), 2, 3);
    const auto& t = run.table;

    // E2: one line in the corner rows, a three-dimensional middle cell
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 2; ++j) {
            int expect = 0;
            if (i == 0 && j == 2) expect = 1;
            if (i == 1 && j == 1) expect = 3;
            if (i == 3 && j == 0) expect = 1;
            CHECK(cell(t, 0, i, j) == expect);
        }

    const Differential* d2 = t.find_diff(2, 1, 1);
    REQUIRE(d2 != nullptr);
    CHECK(d2->matrix.rank() == 1);

    CHECK(exact_betti(t) == std::vector<int>{3, 0, 0});
    CHECK(t.mu == 2);
    CHECK(!t.bounds_only);

    auto inc = inclusion_rank(t);
    CHECK(inc[0].lo == 1);
    CHECK(inc[1].hi == 0);
    CHECK(inc[2].hi == 0);
}

TEST_CASE("twisted cubic") {
    auto run = analyze(twisted_cubic_map(), 2, 3);
    const auto& t = run.table;

    // E2 grid
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            int expect = 0;
            if (i == 0 && (j == 2 || j == 3)) expect = 1;
            if (i == 1 && j == 1) expect = 1;
            if (i == 3 && j == 0) expect = 1;
            CHECK(cell(t, 0, i, j) == expect);
        }

    const Differential* d2 = t.find_diff(2, 1, 1);
    REQUIRE(d2 != nullptr);
    CHECK(d2->matrix.rank() == 1);  // isomorphism of lines

    // E3 grid: only the top column-0 cells survive
    REQUIRE(t.pages.size() >= 2);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            int expect = (i == 0 && (j == 2 || j == 3)) ? 1 : 0;
            CHECK(cell(t, 1, i, j) == expect);
        }

    CHECK(exact_betti(t) == std::vector<int>{1, 1, 0, 0});
    auto inc = inclusion_rank(t);
    CHECK(inc[1].lo == 1);
    CHECK(inc[1].exact());
}

TEST_CASE("hopf systems certify emptiness") {
    auto run = analyze(hopf2_map(), 2, 2);
    const auto& t = run.table;
    CHECK(t.mu == 2);
    // E2 = E3 concentrated in columns 0 and 3
    for (int j = 2; j <= 3; ++j) CHECK(cell(t, 0, 0, j) == 1);
    for (int j = 0; j <= 1; ++j) CHECK(cell(t, 0, 3, j) == 1);
    const Differential* d3a = t.find_diff(3, 0, 2);
    const Differential* d3b = t.find_diff(3, 0, 3);
    REQUIRE(d3a != nullptr);
    REQUIRE(d3b != nullptr);
    CHECK(d3a->matrix.rank() == 1);
    CHECK(d3b->matrix.rank() == 1);
    auto rep = betti_report(t);
    CHECK(rep.empty_certified);
    for (auto& b : rep.betti) {
        CHECK(b.exact());
        CHECK(b.lo == 0);
    }

    auto run1 = analyze(hopf1_map(), 3, 2);
    auto rep1 = betti_report(run1.table);
    CHECK(rep1.empty_certified);
}

TEST_CASE("commuting traceless matrices") {
    auto run = analyze(gamma_v_map(), 2, 2);
    const auto& t = run.table;
    CHECK(t.mu == 2);
    CHECK(exact_betti(t) == std::vector<int>{1, 2, 2, 1, 0, 0});
    const Differential* d3 = t.find_diff(3, 0, 2);
    REQUIRE(d3 != nullptr);
    CHECK(d3->matrix.rank() == 0);
}

TEST_CASE("one-quadric family") {
    // for all 1 <= a <= b, a+b <= n+1 <= 8: Betti = h^- + h^+, ranks = h^-
    for (int n = 1; n <= 7; ++n) {
        for (int b = 1; b <= n; ++b) {
            for (int a = 1; a <= b && a + b <= n + 1; ++a) {
                RatVec diag(n + 1, Rat(0));
                for (int i = 0; i < a; ++i) diag[i] = 1;
                for (int i = a; i < a + b; ++i) diag[i] = -1;
                QuadraticMap map(n, {QuadraticForm::diag(diag)});
                auto run = analyze(map, 0, 0);
                // h-vectors have length n (top degree carries nothing)
                std::vector<int> hm(n + 1, 0), hp(n + 1, 0);
                for (int i = 0; i <= n - b; ++i) hm[i] = 1;
                for (int i = n - a; i <= n - 1; ++i) hp[i] = 1;
                std::vector<int> expect(n + 1, 0);
                for (int i = 0; i <= n; ++i) expect[i] = hm[i] + hp[i];
                CHECK(exact_betti(run.table) == expect);
                auto inc = inclusion_rank(run.table);
                for (int i = 0; i <= n; ++i) {
                    CHECK(inc[i].exact());
                    CHECK(inc[i].lo == hm[i]);
                }
            }
        }
    }
}

TEST_CASE("p identically zero fills projective space") {
    QuadraticMap map(3, {QuadraticForm::zero(4), QuadraticForm::zero(4)});
    auto run = analyze(map, 2, 0);
    CHECK(run.table.mu == 0);
    CHECK(exact_betti(run.table) == std::vector<int>{1, 1, 1, 1});
    auto inc = inclusion_rank(run.table);
    for (auto& e : inc) CHECK((e.exact() && e.lo == 1));
}

TEST_CASE("page invariants across the corpus") {
    std::vector<QuadraticMap> corpus{monomial_pair_map(), twisted_cubic_map(), hopf2_map(),
                                     gamma_v_map()};
    for (const auto& map : corpus) {
        auto run = analyze(map, 2, 2);
        const auto& t = run.table;
        // monotone collapse and Euler invariance
        for (size_t p = 1; p < t.pages.size(); ++p) {
            long e0 = 0, e1 = 0;
            for (int i = 0; i <= t.k + 1; ++i)
                for (int j = 0; j <= t.n; ++j) {
                    CHECK(t.pages[p].at(i, j).hi <= t.pages[p - 1].at(i, j).hi);
                    e0 += ((i + j) % 2 ? -1 : 1) * t.pages[p - 1].at(i, j).lo;
                    e1 += ((i + j) % 2 ? -1 : 1) * t.pages[p].at(i, j).lo;
                }
            CHECK(e0 == e1);
        }
        CHECK(t.degenerate_at.has_value());
    }
}

TEST_CASE("long-exact-sequence identity on the assembled pairs") {
    auto map = twisted_cubic_map();
    auto run = analyze(map, 2, 2);
    for (int j = 0; j <= run.table.n; ++j) {
        const auto& pair = run.table.pairs[j];
        auto sub = restrict_complex(run.cone.cx, pair.subcomplex());
        if (pair.subcomplex().empty()) {
            CHECK(pair.dim(0) == 1);
            continue;
        }
        auto hb = betti(sub);
        CHECK(pair.dim(0) == 0);
        for (int i = 1; i <= run.cone.cx.top_dim; ++i) {
            int expected = 0;
            if (i - 1 < static_cast<int>(hb.size())) expected = hb[i - 1] - (i == 1 ? 1 : 0);
            CHECK(pair.dim(i) == expected);
        }
    }
}
