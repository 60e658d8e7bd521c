#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "tpi/quadrature.hpp"

namespace tpi {

/// Uniform periodic mesh on the unit interval or unit square, I cells per axis.
/// Cell index is ix + I*iy (x fastest).
struct SpaceGrid {
    int dim = 1;
    int I = 100;
    double dx = 0.01;

    SpaceGrid() = default;
    SpaceGrid(int dim_, int cells_per_axis);

    std::size_t cells() const { return dim == 1 ? std::size_t(I) : std::size_t(I) * I; }
    std::array<double, 2> center(std::size_t cell) const;
};

enum class SchemeFamily { upwind, weno };

struct SchemeId {
    SchemeFamily family = SchemeFamily::upwind;
    int order = 1;

    bool linear() const { return family == SchemeFamily::upwind; }
    std::string name() const;
    /// Accepts "upwind1".."upwind3", "weno2", "weno3".
    static SchemeId parse(const std::string& s);
};

void validate(const SchemeId& s);

/// Approximation of v * d/dx on one periodic line of values.
std::vector<double> convective_derivative(const std::vector<double>& line, double v, SchemeId scheme,
                                          double dx);

/// Adds -(v . grad_x) f for every velocity node to out.
/// Layout of f and out: value of cell c at node j is at c*J + j.
void add_transport(const double* f, double* out, const SpaceGrid& sg, const VelocityGrid& vg,
                   SchemeId scheme);

/// Symbol of the discretized -v d/dx acting on exp(i zeta k).
std::complex<double> fourier_symbol(SchemeId scheme, double v, double zeta, double dx);

/// Sum of per-axis symbols for a 2D node (vx, vy) at modes (zx, zy).
std::complex<double> fourier_symbol_2d(SchemeId scheme, const std::array<double, 2>& v, double zx,
                                       double zy, double dx);

/// Nonlinear WENO weights for the upwind interface value from stencil
/// values f[0..4] = f_{i-2..i+2}. r = 2 uses f[1..3], r = 3 uses all five.
std::vector<double> weno_weights(int r, const double* f);

constexpr double weno_epsilon = 1e-6;

}  // namespace tpi
