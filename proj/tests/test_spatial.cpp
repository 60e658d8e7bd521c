// Transport stencils: consistency, convergence order, Fourier symbols.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tpi/spatial.hpp"

using namespace tpi;

namespace {

const double two_pi = 2.0 * std::numbers::pi;

// Discrete L1 error of v*df/dx for f = sin(2 pi x) on I cells.
double derivative_error(SchemeId s, int I, double v) {
    double dx = 1.0 / I;
    std::vector<double> f(I);
    for (int i = 0; i < I; ++i) f[i] = std::sin(two_pi * (i + 0.5) * dx);
    auto d = convective_derivative(f, v, s, dx);
    double e = 0.0;
    for (int i = 0; i < I; ++i) e += std::abs(d[i] - v * two_pi * std::cos(two_pi * (i + 0.5) * dx)) * dx;
    return e;
}

const SchemeId all_schemes[] = {SchemeId::parse("upwind1"), SchemeId::parse("upwind2"),
                                SchemeId::parse("upwind3"), SchemeId::parse("weno2"),
                                SchemeId::parse("weno3")};

}  // namespace

TEST_SUITE("spatial") {
    TEST_CASE("scheme names round-trip and bad names are rejected") {
        for (auto s : all_schemes) CHECK(SchemeId::parse(s.name()).name() == s.name());
        CHECK_THROWS(SchemeId::parse("upwind4"));
        CHECK_THROWS(SchemeId::parse("weno1"));
        CHECK_THROWS(SchemeId::parse("lax"));
        CHECK_THROWS(SchemeId::parse("upwind"));
    }

    TEST_CASE("constant data and zero velocity give zero") {
        for (auto s : all_schemes) {
            std::vector<double> c(17, 3.25);
            for (double x : convective_derivative(c, 1.3, s, 0.1)) CHECK(std::abs(x) < 1e-12);
            for (double x : convective_derivative(c, -0.7, s, 0.1)) CHECK(std::abs(x) < 1e-12);
            std::vector<double> r(17);
            for (int i = 0; i < 17; ++i) r[i] = std::sin(i * 1.7);
            for (double x : convective_derivative(r, 0.0, s, 0.1)) CHECK(x == 0.0);
        }
    }

    TEST_CASE("observed order of accuracy on a smooth wave") {
        const int expected[] = {1, 2, 3, 3, 5};
        for (int k = 0; k < 5; ++k) {
            for (double v : {1.0, -1.0}) {
                // WENO needs a resolved wave before the nonlinear weights settle.
                int I0 = all_schemes[k].linear() ? 64 : 128;
                double e1 = derivative_error(all_schemes[k], I0, v);
                double e2 = derivative_error(all_schemes[k], 2 * I0, v);
                double p = std::log2(e1 / e2);
                INFO(all_schemes[k].name(), " v=", v, " p=", p);
                CHECK(p > expected[k] - 0.3);
            }
        }
    }

    TEST_CASE("discrete conservation: sum of the transport term vanishes") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<double> f(40);
        for (auto& x : f) x = u(rng);
        for (auto s : all_schemes)
            for (double v : {0.8, -1.9}) {
                double sum = 0.0;
                for (double x : convective_derivative(f, v, s, 0.025)) sum += x;
                CHECK(std::abs(sum) < 1e-12);
            }
    }

    TEST_CASE("symbol matches the action on a plane wave") {
        const int I = 24;
        const double dx = 1.0 / I;
        for (int k = 0; k < 3; ++k) {
            auto s = all_schemes[k];
            for (double v : {1.4, -0.6})
                for (int m : {0, 1, 5, 12}) {
                    double zeta = two_pi * m / I;
                    std::vector<double> re(I), im(I);
                    for (int i = 0; i < I; ++i) {
                        re[i] = std::cos(zeta * i);
                        im[i] = std::sin(zeta * i);
                    }
                    auto dr = convective_derivative(re, v, s, dx);
                    auto di = convective_derivative(im, v, s, dx);
                    auto sym = fourier_symbol(s, v, zeta, dx);
                    for (int i = 0; i < I; ++i) {
                        std::complex<double> act(-dr[i], -di[i]);
                        std::complex<double> pred = sym * std::exp(std::complex<double>(0, zeta * i));
                        CHECK(std::abs(act - pred) < 1e-10 * (1 + std::abs(sym)));
                    }
                }
        }
    }

    TEST_CASE("symbol reference values and symmetries") {
        auto up1 = SchemeId::parse("upwind1");
        auto a = fourier_symbol(up1, 1.0, std::numbers::pi, 0.01);
        CHECK(a.real() == doctest::Approx(-200.0));
        CHECK(std::abs(a.imag()) < 1e-10);
        for (int k = 0; k < 3; ++k) {
            auto s = all_schemes[k];
            CHECK(std::abs(fourier_symbol(s, 2.0, 0.0, 0.1)) < 1e-14);
            for (double z : {0.3, 1.1, 2.9})
                for (double v : {1.0, -2.0}) {
                    auto p = fourier_symbol(s, v, z, 0.05), q = fourier_symbol(s, v, -z, 0.05);
                    CHECK(std::abs(p - std::conj(q)) < 1e-12);
                    CHECK(p.real() <= 1e-12);  // upwind stencils are dissipative
                }
        }
        CHECK_THROWS(fourier_symbol(SchemeId::parse("weno2"), 1.0, 0.5, 0.1));
        CHECK_THROWS(fourier_symbol(SchemeId::parse("weno3"), 1.0, 0.5, 0.1));
        auto s2 = fourier_symbol_2d(up1, {1.0, -1.0}, 0.4, 0.7, 0.1);
        auto sx = fourier_symbol(up1, 1.0, 0.4, 0.1), sy = fourier_symbol(up1, -1.0, 0.7, 0.1);
        CHECK(std::abs(s2 - (sx + sy)) < 1e-14);
    }

    TEST_CASE("WENO weights sum to one and approach the linear weights on smooth data") {
        double f5[5] = {0.1, -0.4, 2.0, 7.0, -3.0};
        for (int r : {2, 3}) {
            auto w = weno_weights(r, f5);
            double s = 0.0;
            for (double x : w) {
                CHECK(x >= 0.0);
                s += x;
            }
            CHECK(std::abs(s - 1.0) < 1e-14);
        }
        double lin[5] = {1.0, 1.001, 1.002, 1.003, 1.004};
        auto w2 = weno_weights(2, lin);
        CHECK(std::abs(w2[0] - 1.0 / 3.0) < 1e-6);
        auto w3 = weno_weights(3, lin);
        CHECK(std::abs(w3[0] - 0.1) < 1e-6);
        CHECK(std::abs(w3[1] - 0.6) < 1e-6);
        CHECK(std::abs(w3[2] - 0.3) < 1e-6);
        CHECK_THROWS(weno_weights(4, lin));
    }

    TEST_CASE("WENO2 agrees with third-order upwind on well-resolved data") {
        const int I = 400;
        std::vector<double> f(I);
        for (int i = 0; i < I; ++i) f[i] = std::sin(two_pi * i / I);
        auto a = convective_derivative(f, 1.0, SchemeId::parse("weno2"), 1.0 / I);
        auto b = convective_derivative(f, 1.0, SchemeId::parse("upwind3"), 1.0 / I);
        double diff = 0.0;
        for (int i = 0; i < I; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
        CHECK(diff < 1e-2);
    }

    TEST_CASE("WENO3 reduces to its optimal linear scheme on smooth data") {
        const int I = 400;
        const double dx = 1.0 / I;
        std::vector<double> f(I);
        for (int i = 0; i < I; ++i) f[i] = std::sin(two_pi * i / I);
        auto a = convective_derivative(f, 1.0, SchemeId::parse("weno3"), dx);
        // Fifth-order upwind flux (2, -13, 47, 27, -3)/60 on f_{i-2..i+2}.
        auto F = [&](int i) {
            auto at = [&](int k) { return f[((i + k) % I + I) % I]; };
            return (2 * at(-2) - 13 * at(-1) + 47 * at(0) + 27 * at(1) - 3 * at(2)) / 60.0;
        };
        double diff = 0.0;
        for (int i = 0; i < I; ++i) diff = std::max(diff, std::abs(a[i] - (F(i) - F(i - 1)) / dx));
        CHECK(diff < 1e-3);
    }

    TEST_CASE("WENO stays bounded across a discontinuity") {
        const int I = 100;
        std::vector<double> f(I, 0.0);
        for (int i = 25; i < 75; ++i) f[i] = 1.0;
        for (auto name : {"weno2", "weno3"}) {
            auto s = SchemeId::parse(name);
            // One forward Euler step at CFL 0.2 should stay near [0, 1].
            double dt = 0.2 / I;
            auto d = convective_derivative(f, 1.0, s, 1.0 / I);
            for (int i = 0; i < I; ++i) {
                double g = f[i] - dt * d[i];
                CHECK(g > -0.05);
                CHECK(g < 1.05);
            }
        }
    }

    TEST_CASE("2D transport applies each axis with its own velocity") {
        SpaceGrid sg(2, 16);
        auto vg = gauss_hermite_2d(2);
        const std::size_t J = vg.size();
        std::vector<double> f(sg.cells() * J), out(f.size(), 0.0);
        for (std::size_t c = 0; c < sg.cells(); ++c) {
            auto x = sg.center(c);
            for (std::size_t j = 0; j < J; ++j) f[c * J + j] = std::sin(two_pi * x[0]) + std::cos(two_pi * x[1]);
        }
        auto up1 = SchemeId::parse("upwind1");
        add_transport(f.data(), out.data(), sg, vg, up1);
        for (std::size_t j = 0; j < J; ++j) {
            auto v = vg.nodes[j];
            for (int iy = 0; iy < 16; ++iy) {
                std::vector<double> row(16), col(16);
                for (int ix = 0; ix < 16; ++ix) row[ix] = f[(ix + 16 * iy) * J + j];
                auto dxr = convective_derivative(row, v[0], up1, sg.dx);
                for (int ix = 0; ix < 16; ++ix) {
                    for (int k = 0; k < 16; ++k) col[k] = f[(ix + 16 * k) * J + j];
                    auto dyc = convective_derivative(col, v[1], up1, sg.dx);
                    CHECK(std::abs(out[(ix + 16 * iy) * J + j] + dxr[ix] + dyc[iy]) < 1e-11);
                }
            }
        }
        CHECK_THROWS(SpaceGrid(3, 4));
        CHECK_THROWS(SpaceGrid(1, 0));
    }
}
