#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qtop/quadratic.hpp"

using namespace qtop;
using namespace qtop_test;

/* p = (x0x1, x0x2, x1x2) on R^3. */
static QuadraticMap monomial_pair_map() {
    auto off = [](int i, int j) {
        RatMat m(3, 3);
        m.at(i, j) = Rat(1, 2);
        m.at(j, i) = Rat(1, 2);
        return QuadraticForm(std::move(m));
    };
    return QuadraticMap(2, {off(0, 1), off(0, 2), off(1, 2)});
}

/* p = (x0x2 - x1^2, x0x3 - x1x2, x1x3 - x2^2) on R^4. */
static QuadraticMap twisted_cubic_map() {
    RatMat a(4, 4), b(4, 4), c(4, 4);
    a.at(0, 2) = a.at(2, 0) = Rat(1, 2);
    a.at(1, 1) = -1;
    b.at(0, 3) = b.at(3, 0) = Rat(1, 2);
    b.at(1, 2) = b.at(2, 1) = Rat(-1, 2);
    c.at(1, 3) = c.at(3, 1) = Rat(1, 2);
    c.at(2, 2) = -1;
    return QuadraticMap(3, {QuadraticForm(a), QuadraticForm(b), QuadraticForm(c)});
}

TEST_CASE("oracle self-check: char poly and root counting") {
    auto f = QuadraticForm::diag({Rat(1), Rat(-1), Rat(0)});
    auto p = char_poly(f.q);  // (l-1)(l+1)l = l^3 - l
    REQUIRE(p.size() == 4);
    CHECK(p[0] == 0);
    CHECK(p[1] == -1);
    CHECK(p[2] == 0);
    CHECK(p[3] == 1);
    CHECK(positive_roots_with_multiplicity(p) == 1);
    auto g = inertia_oracle(f);
    CHECK(g == Inertia{1, 1, 1});
    // multiplicity: diag(2,2,-3)
    auto h = inertia_oracle(QuadraticForm::diag({Rat(2), Rat(2), Rat(-3)}));
    CHECK(h == Inertia{2, 0, 1});
}

TEST_CASE("evaluate_pencil basic values") {
    auto p = monomial_pair_map();
    auto f = evaluate_pencil(p, {Rat(1), Rat(0), Rat(0)});
    CHECK(f.q.at(0, 1) == Rat(1, 2));
    CHECK(f.q.at(1, 0) == Rat(1, 2));
    CHECK(f.q.at(0, 2) == 0);
    CHECK(f.q.at(2, 2) == 0);

    auto z = evaluate_pencil(p, {Rat(0), Rat(0), Rat(0)});
    for (const auto& e : z.q.a) CHECK(e == 0);

    auto s = evaluate_pencil(p, {Rat(1), Rat(1), Rat(1)});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s.q.at(i, j) == (i == j ? Rat(0) : Rat(1, 2)));

    CHECK_THROWS_AS(evaluate_pencil(p, {Rat(1), Rat(0)}), Error);
}

TEST_CASE("inertia_exact on pinned examples") {
    CHECK(inertia_exact(QuadraticForm::identity(3)) == Inertia{3, 0, 0});
    CHECK(inertia_exact(QuadraticForm::diag({Rat(1), Rat(-1), Rat(0)})) == Inertia{1, 1, 1});

    auto p = monomial_pair_map();
    // char poly of the (1,1,1) pencil is (l-1)(l+1/2)^2: one positive root.
    auto f = evaluate_pencil(p, {Rat(1), Rat(1), Rat(1)});
    CHECK(inertia_oracle(f) == Inertia{1, 0, 2});
    CHECK(inertia_exact(f) == Inertia{1, 0, 2});

    // negative coordinate product puts omega in the deeper stratum
    auto g = evaluate_pencil(p, {Rat(1), Rat(1), Rat(-1)});
    CHECK(inertia_exact(g) == Inertia{2, 0, 1});
    CHECK(inertia_oracle(g) == inertia_exact(g));
}

TEST_CASE("inertia_float basics and tolerance handling") {
    CHECK(inertia_float(QuadraticForm::identity(3), 1e-9) == Inertia{3, 0, 0});
    CHECK(inertia_float(QuadraticForm::diag({Rat(2), Rat(-3)}), 1e-9) == Inertia{1, 0, 1});
    auto p = monomial_pair_map();
    auto f = evaluate_pencil(p, {Rat(1), Rat(1), Rat(1)});
    CHECK(inertia_float(f, 1e-9) == Inertia{1, 0, 2});
    CHECK_THROWS_AS(inertia_float(QuadraticForm::identity(2), -1.0), Error);
}

TEST_CASE("exact and float inertia agree on random rational forms") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        QuadraticForm f(random_symmetric(rng, n));
        CHECK(inertia_float(f, 1e-9) == inertia_exact(f));
    }
}

TEST_CASE("Sylvester invariance and sign swap") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        QuadraticForm f(random_symmetric(rng, n, 50));
        auto base = inertia_exact(f);
        CHECK(base.pos + base.zero + base.neg == n);
        auto A = random_invertible(rng, n);
        CHECK(inertia_exact(QuadraticForm(congruence(f.q, A))) == base);
        auto m = inertia_exact(negate(f));
        CHECK(m.pos == base.neg);
        CHECK(m.neg == base.pos);
        CHECK(m.zero == base.zero);
    }
}

TEST_CASE("restrict_to_subspace") {
    auto f = QuadraticForm::diag({Rat(1), Rat(-1), Rat(1)});
    std::vector<RatVec> e01 = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
    auto r = restrict_to_subspace(f, e01);
    CHECK(r.dim == 2);
    CHECK(r.q.at(0, 0) == 1);
    CHECK(r.q.at(1, 1) == -1);
    CHECK(r.q.at(0, 1) == 0);

    std::vector<RatVec> full = {{Rat(1), Rat(0), Rat(0)},
                                {Rat(0), Rat(1), Rat(0)},
                                {Rat(0), Rat(0), Rat(1)}};
    CHECK(restrict_to_subspace(f, full).q == f.q);

    std::vector<RatVec> dep = {{Rat(1), Rat(0), Rat(0)}, {Rat(2), Rat(0), Rat(0)}};
    CHECK_THROWS_AS(restrict_to_subspace(f, dep), Error);

    // coordinate-hyperplane restriction of a twisted-cubic pencil, against a
    // direct product oracle
    auto tc = twisted_cubic_map();
    auto g = evaluate_pencil(tc, {Rat(1), Rat(2), Rat(-1)});
    std::vector<RatVec> hyp = {{Rat(1), Rat(0), Rat(0), Rat(0)},
                               {Rat(0), Rat(1), Rat(0), Rat(0)},
                               {Rat(0), Rat(0), Rat(1), Rat(0)}};
    auto rr = restrict_to_subspace(g, hyp);
    RatMat B = columns_matrix(hyp);
    RatMat expect = mat_mul(mat_transpose(B), mat_mul(g.q, B));
    CHECK(rr.q == expect);
    CHECK(rr.dim == 3);
}

TEST_CASE("hat_extend") {
    auto p = monomial_pair_map();
    auto h = hat_extend(p);
    CHECK(h.k == 3);
    CHECK(h.n == 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h.forms[0].q.at(i, j) == (i == j ? Rat(-1) : Rat(0)));

    auto z = QuadraticMap(2, {QuadraticForm::zero(3)});
    auto hz = hat_extend(z);
    CHECK(hz.k == 1);
    CHECK(inertia_exact(hz.forms[0]) == Inertia{0, 0, 3});

    auto hh = hat_extend(h);
    CHECK(hh.forms[0].q == hh.forms[1].q);
    RatVec north(hh.k + 1, Rat(0));
    north[0] = 1;
    CHECK(inertia_exact(evaluate_pencil(hh, north)).pos == 0);
}

TEST_CASE("bilinear shortcut matches block-form inertia") {
    CHECK(inertia_bilinear_shortcut(RatMat::identity(2)) == 2);
    CHECK(inertia_bilinear_shortcut(RatMat(3, 3)) == 0);

    // commuting-matrices pencil: rk(omega B) = 2 away from 0
    RatMat B1(3, 3), B2(3, 3), B3(3, 3);
    B1.at(1, 1) = -1;
    B1.at(2, 2) = 1;
    B2.at(0, 2) = 1;
    B2.at(1, 0) = -1;
    B3.at(0, 1) = 1;
    B3.at(2, 0) = -1;
    RatMat wB(3, 3);
    for (size_t t = 0; t < wB.a.size(); ++t) wB.a[t] = B1.a[t] + B2.a[t] + B3.a[t];
    CHECK(inertia_bilinear_shortcut(wB) == 2);

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 1 + static_cast<int>(rng() % 4);
        RatMat L(m, m);
        for (auto& x : L.a) x = random_rat(rng, 5, 3);
        if (rng() % 3 == 0)
            for (int i = 0; i < m; ++i) L.at(i, 0) = 0;  // force rank drops sometimes
        auto blk = inertia_exact(bilinear_block_form(L));
        CHECK(inertia_bilinear_shortcut(L) == blk.pos);
        CHECK(blk.pos == blk.neg);
    }
}

TEST_CASE("lower semicontinuity probe") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        QuadraticForm f(random_symmetric(rng, n, 20));
        auto base = inertia_exact(f);
        QuadraticForm h(random_symmetric(rng, n, 20));

        // shrink epsilon until the perturbation counts stabilize twice
        Rat eps(1, 16);
        Inertia prev{-1, -1, -1}, cur{-2, -2, -2};
        for (int step = 0; step < 60; ++step) {
            RatMat m = f.q;
            for (size_t t = 0; t < m.a.size(); ++t) m.a[t] += eps * h.q.a[t];
            Inertia now = inertia_exact(QuadraticForm(m));
            if (now == cur && cur == prev) break;
            prev = cur;
            cur = now;
            eps /= 4;
        }
        CHECK(cur.pos >= base.pos - base.zero);
        CHECK(cur.pos >= base.pos);  // strict lower semicontinuity for small eps

        // q - eps*I drops the kernel into the negatives
        Rat e2(1, 1);
        for (int step = 0; step < 80; ++step) {
            RatMat m = f.q;
            for (int i = 0; i < n; ++i) m.at(i, i) -= e2;
            Inertia now = inertia_exact(QuadraticForm(m));
            if (now.pos == base.pos && now.neg == base.neg + base.zero) break;
            e2 /= 4;
        }
        RatMat m = f.q;
        for (int i = 0; i < n; ++i) m.at(i, i) -= e2;
        Inertia now = inertia_exact(QuadraticForm(m));
        CHECK(now.pos == base.pos);
        CHECK(now.neg == base.neg + base.zero);
    }
}
