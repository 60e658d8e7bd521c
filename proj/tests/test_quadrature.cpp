// Gauss-Hermite rules against closed-form Gaussian moments.

#include <cmath>
#include <random>

#include "doctest.h"
#include "tpi/quadrature.hpp"

using namespace tpi;

namespace {

// E[v^n] for the standard normal: (n-1)!! for even n, 0 for odd n.
double gaussian_moment(int n) {
    if (n % 2) return 0.0;
    double m = 1.0;
    for (int k = n - 1; k > 1; k -= 2) m *= k;
    return m;
}

double quad_moment(const VelocityGrid& g, int n, int axis = 0) {
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] * std::pow(g.nodes[j][axis], n);
    return s;
}

}  // namespace

TEST_SUITE("quadrature") {
    TEST_CASE("trivial rules") {
        auto g1 = gauss_hermite_1d(1);
        REQUIRE(g1.size() == 1);
        CHECK(g1.nodes[0][0] == 0.0);
        CHECK(g1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

        auto g2 = gauss_hermite_1d(2);
        CHECK(g2.nodes[0][0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(g2.nodes[1][0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(g2.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
    }

    TEST_CASE("J=10 moments and reference nodes") {
        auto g = gauss_hermite_1d(10);
        CHECK(std::abs(quad_moment(g, 2) - 1.0) < 1e-12);
        CHECK(std::abs(quad_moment(g, 4) - 3.0) < 1e-12);
        // Positive roots of He_10 (tabulated values).
        const double ref[] = {0.48493570751549764, 1.4659890943911582, 2.4843258416389546, 3.5818234835519269,
                              4.8594628283323665};
        for (int k = 0; k < 5; ++k) CHECK(std::abs(g.nodes[5 + k][0] - ref[k]) < 1e-12);
    }

    TEST_CASE("invariants: sorted, symmetric bitwise, positive, normalized") {
        for (int J : {1, 2, 3, 7, 10, 20, 41, 64}) {
            auto g = gauss_hermite_1d(J);
            double sum = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) {
                CHECK(g.weights[j] > 0.0);
                CHECK(g.nodes[j][0] == -g.nodes[g.mirror(j)][0]);
                CHECK(g.weights[j] == g.weights[g.mirror(j)]);
                if (j > 0) CHECK(g.nodes[j][0] > g.nodes[j - 1][0]);
                sum += g.weights[j];
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }

    TEST_CASE("exact for random polynomials of degree <= 2J-1") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (int J : {2, 5, 10}) {
            auto g = gauss_hermite_1d(J);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<double> c(2 * J);
                for (auto& x : c) x = coef(rng);
                double exact = 0.0, quad = 0.0;
                for (int n = 0; n < 2 * J; ++n) {
                    exact += c[n] * gaussian_moment(n);
                    quad += c[n] * quad_moment(g, n);
                }
                CHECK(std::abs(exact - quad) < 1e-10 * std::max(1.0, std::abs(exact)));
            }
        }
    }

    TEST_CASE("rejects empty rules") {
        CHECK_THROWS(gauss_hermite_1d(0));
        CHECK_THROWS(gauss_hermite_2d(0));
    }

    TEST_CASE("2D tensor rules") {
        auto g1 = gauss_hermite_2d(1);
        REQUIRE(g1.size() == 1);
        CHECK(g1.nodes[0][0] == 0.0);
        CHECK(g1.nodes[0][1] == 0.0);
        CHECK(g1.weights[0] == doctest::Approx(1.0));

        auto g2 = gauss_hermite_2d(2);
        REQUIRE(g2.size() == 4);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(std::abs(g2.nodes[j][0]) - 1.0) < 1e-14);
            CHECK(std::abs(std::abs(g2.nodes[j][1]) - 1.0) < 1e-14);
            CHECK(g2.weights[j] == doctest::Approx(0.25));
        }

        auto g = gauss_hermite_2d(10);
        CHECK(g.dim == 2);
        double xy = 0.0, r2 = 0.0, sum = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            xy += g.weights[j] * g.nodes[j][0] * g.nodes[j][1];
            r2 += g.weights[j] * (g.nodes[j][0] * g.nodes[j][0] + g.nodes[j][1] * g.nodes[j][1]);
            sum += g.weights[j];
            CHECK(g.nodes[j][0] == -g.nodes[g.mirror(j)][0]);
            CHECK(g.nodes[j][1] == -g.nodes[g.mirror(j)][1]);
        }
        CHECK(std::abs(xy) < 1e-12);
        CHECK(std::abs(r2 - 2.0) < 1e-12);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}
