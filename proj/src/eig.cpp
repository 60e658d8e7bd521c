#include "tpi/eig.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tpi {

namespace {

void to_hessenberg(ComplexMatrix& H) {
    const std::size_t n = H.n;
    std::vector<cplx> u(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(H(i, k));
        double tail = alpha2 - std::norm(H(k + 1, k));
        if (tail == 0.0) continue;
        double alpha = std::sqrt(alpha2);
        cplx x0 = H(k + 1, k);
        cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        // u = x + phase*|x| e1, P = I - 2 u u^H / (u^H u)
        for (std::size_t i = k + 1; i < n; ++i) u[i] = H(i, k);
        u[k + 1] += phase * alpha;
        double unorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) unorm2 += std::norm(u[i]);
        // H = P H
        for (std::size_t j = k; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(u[i]) * H(i, j);
            s *= 2.0 / unorm2;
            for (std::size_t i = k + 1; i < n; ++i) H(i, j) -= u[i] * s;
        }
        // H = H P
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += H(i, j) * u[j];
            s *= 2.0 / unorm2;
            for (std::size_t j = k + 1; j < n; ++j) H(i, j) -= s * std::conj(u[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) H(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    cplx s;
};

// Rotation G = [c s; -conj(s) c] with G [x; y] = [r; 0].
Givens make_givens(cplx x, cplx y) {
    double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) return {1.0, 0.0};
    if (ax == 0.0) return {0.0, 1.0};
    double nrm = std::hypot(ax, ay);
    return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

}  // namespace

std::vector<cplx> eig_dense(ComplexMatrix H) {
    const std::size_t n = H.n;
    std::vector<cplx> eig;
    eig.reserve(n);
    if (n == 0) return eig;
    for (const cplx& z : H.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("eig_dense: non-finite matrix entry");
    to_hessenberg(H);

    const std::size_t cap = 100 * n;
    std::size_t total = 0;
    std::size_t since_deflation = 0;
    std::vector<Givens> rot(n);
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    while (hi >= 0) {
        if (hi == 0) {
            eig.push_back(H(0, 0));
            break;
        }
        std::ptrdiff_t l = hi;
        for (; l > 0; --l) {
            double scale = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
            if (scale == 0.0) scale = 1.0;
            if (std::abs(H(l, l - 1)) <= 1e-16 * scale) {
                H(l, l - 1) = 0.0;
                break;
            }
        }
        if (l == hi) {
            eig.push_back(H(hi, hi));
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++total > cap)
            throw EigenConvergenceError("eig_dense: no convergence after " + std::to_string(cap) + " QR sweeps");
        ++since_deflation;

        cplx mu;
        if (since_deflation % 11 == 0) {
            // Exceptional shift to break cycles.
            mu = H(hi, hi) + std::abs(H(hi, hi - 1).real()) + std::abs(H(hi, hi - 1).imag());
        } else {
            cplx a = H(hi - 1, hi - 1), b = H(hi - 1, hi), c = H(hi, hi - 1), d = H(hi, hi);
            cplx tr = a + d, det = a * d - b * c;
            cplx disc = std::sqrt(tr * tr * 0.25 - det);
            cplx r1 = tr * 0.5 + disc, r2 = tr * 0.5 - disc;
            mu = std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
        }

        for (std::ptrdiff_t k = l; k <= hi; ++k) H(k, k) -= mu;
        for (std::ptrdiff_t k = l; k < hi; ++k) {
            Givens g = make_givens(H(k, k), H(k + 1, k));
            rot[k] = g;
            for (std::ptrdiff_t j = k; j <= hi; ++j) {
                cplx x = H(k, j), y = H(k + 1, j);
                H(k, j) = g.c * x + g.s * y;
                H(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (std::ptrdiff_t k = l; k < hi; ++k) {
            const Givens& g = rot[k];
            std::ptrdiff_t top = std::min(k + 2, hi);
            for (std::ptrdiff_t i = l; i <= top; ++i) {
                cplx x = H(i, k), y = H(i, k + 1);
                H(i, k) = g.c * x + std::conj(g.s) * y;
                H(i, k + 1) = -g.s * x + g.c * y;
            }
        }
        for (std::ptrdiff_t k = l; k <= hi; ++k) H(k, k) += mu;
    }
    return eig;
}

}  // namespace tpi
