#pragma once

#include <cstddef>
#include <vector>

#include "tpi/quadrature.hpp"
#include "tpi/spatial.hpp"

namespace tpi {

/// Distribution values on the space x velocity grid, space-major:
/// values[cell * J + j]. Values are densities against the Gaussian measure.
struct StateField {
    SpaceGrid space;
    VelocityGrid vel;
    std::vector<double> values;

    StateField() = default;
    StateField(SpaceGrid s, VelocityGrid v)
        : space(s), vel(std::move(v)), values(space.cells() * vel.size(), 0.0) {}

    double& at(std::size_t cell, std::size_t j) { return values[cell * vel.size() + j]; }
    double at(std::size_t cell, std::size_t j) const { return values[cell * vel.size() + j]; }
};

}  // namespace tpi
