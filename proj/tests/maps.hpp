#pragma once

/* Shared example systems used across the test suites. */

#include "qtop/quadratic.hpp"

namespace qtop_test {

using qtop::QuadraticForm;
using qtop::QuadraticMap;
using qtop::Rat;
using qtop::RatMat;

/* p = (x0x1, x0x2, x1x2) on R^3. */
inline QuadraticMap monomial_pair_map() {
    auto off = [](int i, int j) {
        RatMat m(3, 3);
        m.at(i, j) = Rat(1, 2);
        m.at(j, i) = Rat(1, 2);
        return QuadraticForm(std::move(m));
    };
    return QuadraticMap(2, {off(0, 1), off(0, 2), off(1, 2)});
}

/* p = (x0x2 - x1^2, x0x3 - x1x2, x1x3 - x2^2) on R^4. */
inline QuadraticMap twisted_cubic_map() {
    RatMat a(4, 4), b(4, 4), c(4, 4);
    a.at(0, 2) = a.at(2, 0) = Rat(1, 2);
    a.at(1, 1) = -1;
    b.at(0, 3) = b.at(3, 0) = Rat(1, 2);
    b.at(1, 2) = b.at(2, 1) = Rat(-1, 2);
    c.at(1, 3) = c.at(3, 1) = Rat(1, 2);
    c.at(2, 2) = -1;
    return QuadraticMap(3, {QuadraticForm(a), QuadraticForm(b), QuadraticForm(c)});
}

/* (2zw, w^2 - z^2) on R^2. */
inline QuadraticMap hopf1_map() {
    RatMat p0(2, 2), p1(2, 2);
    p0.at(0, 1) = p0.at(1, 0) = 1;
    p1.at(0, 0) = -1;
    p1.at(1, 1) = 1;
    return QuadraticMap(1, {QuadraticForm(p0), QuadraticForm(p1)});
}

/* (2 z wbar, |w|^2 - |z|^2) on R^4 = C^2. */
inline QuadraticMap hopf2_map() {
    RatMat p0(4, 4), p1(4, 4), p2(4, 4);
    p0.at(0, 2) = p0.at(2, 0) = 1;
    p0.at(1, 3) = p0.at(3, 1) = 1;
    p1.at(1, 2) = p1.at(2, 1) = 1;
    p1.at(0, 3) = p1.at(3, 0) = -1;
    p2.at(0, 0) = p2.at(1, 1) = -1;
    p2.at(2, 2) = p2.at(3, 3) = 1;
    return QuadraticMap(3, {QuadraticForm(p0), QuadraticForm(p1), QuadraticForm(p2)});
}

/* direct sum of m copies of the complex Hopf system, on R^{4m}. */
inline QuadraticMap nhopf2_map(int m) {
    auto h = hopf2_map();
    int n1 = 4 * m;
    std::vector<QuadraticForm> forms;
    for (int t = 0; t < 3; ++t) {
        RatMat q(n1, n1);
        for (int b = 0; b < m; ++b)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) q.at(4 * b + i, 4 * b + j) = h.forms[t].q.at(i, j);
        forms.emplace_back(std::move(q));
    }
    return QuadraticMap(n1 - 1, std::move(forms));
}

/* commuting traceless 2x2 matrices: the bilinear system on R^6. */
inline QuadraticMap gamma_v_map() {
    RatMat B1(3, 3), B2(3, 3), B3(3, 3);
    B1.at(1, 1) = -1;
    B1.at(2, 2) = 1;
    B2.at(0, 2) = 1;
    B2.at(1, 0) = -1;
    B3.at(0, 1) = 1;
    B3.at(2, 0) = -1;
    return QuadraticMap(5, {qtop::bilinear_block_form(B1), qtop::bilinear_block_form(B2),
                            qtop::bilinear_block_form(B3)});
}

}  // namespace qtop_test
