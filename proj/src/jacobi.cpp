#include "qtop/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qtop {

static double offdiag_norm(const std::vector<double>& a, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

JacobiEigen jacobi_eigen(const std::vector<double>& sym, int n) {
    require(static_cast<int>(sym.size()) == n * n, ErrKind::Dimension, "jacobi: bad matrix size");
    std::vector<double> a = sym;
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double scale = 0;
    for (double x : a) scale = std::max(scale, std::fabs(x));
    const double eps = (scale > 0 ? scale : 1.0) * 1e-14;
    const int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a, n) <= eps) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) <= eps * 1e-2) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    double apj = a[p * n + j], aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v[i * n + p], viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
    }
    if (sweep == max_sweeps && offdiag_norm(a, n) > eps)
        fail(ErrKind::Numeric, "jacobi: no convergence after sweep cap", offdiag_norm(a, n));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a[x * n + x] > a[y * n + y]; });
    JacobiEigen out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int r = 0; r < n; ++r) {
        out.values[r] = a[order[r] * n + order[r]];
        for (int i = 0; i < n; ++i) out.vectors[r][i] = v[i * n + order[r]];
    }
    return out;
}

double spectral_radius_estimate(const std::vector<double>& sym, int n) {
    // Gershgorin bound; cheap and adequate for relative floors.
    double best = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += std::fabs(sym[i * n + j]);
        best = std::max(best, row);
    }
    return best;
}

}  // namespace qtop
