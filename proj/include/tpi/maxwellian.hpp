#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tpi/state.hpp"

namespace tpi {

constexpr double rho_floor = 1e-14;

struct MomentSet {
    double rho = 0.0;
    std::array<double, 2> vbar{0.0, 0.0};
    double T = 0.0;
    bool resolved = false;  // false when rho <= rho_floor: vbar and T are reported as 0
};

struct MomentReport {
    std::vector<MomentSet> cells;
    std::vector<std::size_t> negative_cells;
};

MomentReport moments(const StateField& f);

/// rho per cell, the quadrature average of f.
std::vector<double> density(const StateField& f);
void density(const double* f, std::size_t cells, const VelocityGrid& vg, double* rho);

/// (1 + v^x) in 1D, (1 + v^x)(1 + v^y) in 2D, per node.
std::vector<double> equilibrium_shape(const VelocityGrid& vg);

StateField linearized_maxwellian(const std::vector<double>& rho, const SpaceGrid& sg,
                                 const VelocityGrid& vg);

/// Full Maxwellian rho (2 pi T)^{-D/2} exp(-|v - vbar|^2 / (2T)), as a Lebesgue density.
double maxwellian(const MomentSet& m, const std::array<double, 2>& v, int dim);

}  // namespace tpi
