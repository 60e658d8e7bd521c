#include "tpi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tpi {

namespace {

// Implicit QL on a symmetric tridiagonal matrix (diag d, sub-diagonal e),
// accumulating the first row of the eigenvector matrix only.
void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, std::vector<double>& z0) {
    const int n = static_cast<int>(d.size());
    z0.assign(n, 0.0);
    z0[0] = 1.0;
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw std::runtime_error("gauss_hermite: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z0[i + 1];
                    z0[i + 1] = s * z0[i] + c * f;
                    z0[i] = c * z0[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

double VelocityGrid::average(const std::vector<double>& g) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) s += weights[j] * g[j];
    return s;
}

VelocityGrid gauss_hermite_1d(int J) {
    if (J < 1) throw std::invalid_argument("gauss_hermite_1d: J must be >= 1");
    std::vector<double> d(J, 0.0), e;
    for (int k = 1; k < J; ++k) e.push_back(std::sqrt(static_cast<double>(k)));
    std::vector<double> z0;
    tridiagonal_ql(d, e, z0);

    std::vector<int> order(J);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> x(J), w(J);
    for (int j = 0; j < J; ++j) {
        x[j] = d[order[j]];
        w[j] = z0[order[j]] * z0[order[j]];
    }
    // Mirror so that the symmetry holds bit for bit.
    for (int j = 0; j < J / 2; ++j) {
        int m = J - 1 - j;
        double a = 0.5 * (std::abs(x[j]) + std::abs(x[m]));
        double ww = 0.5 * (w[j] + w[m]);
        x[j] = -a;
        x[m] = a;
        w[j] = w[m] = ww;
    }
    if (J % 2 == 1) x[J / 2] = 0.0;
    double total = 0.0;
    for (int j = 0; j < J / 2; ++j) total += 2.0 * w[j];
    if (J % 2 == 1) total += w[J / 2];
    for (auto& ww : w) ww /= total;

    VelocityGrid g;
    g.dim = 1;
    g.weights = w;
    for (double v : x) g.nodes.push_back({v, 0.0});
    return g;
}

VelocityGrid gauss_hermite_2d(int J_per_axis) {
    if (J_per_axis < 1) throw std::invalid_argument("gauss_hermite_2d: J_per_axis must be >= 1");
    VelocityGrid g1 = gauss_hermite_1d(J_per_axis);
    VelocityGrid g;
    g.dim = 2;
    for (int a = 0; a < J_per_axis; ++a)
        for (int b = 0; b < J_per_axis; ++b) {
            g.nodes.push_back({g1.nodes[a][0], g1.nodes[b][0]});
            g.weights.push_back(g1.weights[a] * g1.weights[b]);
        }
    return g;
}

}  // namespace tpi
