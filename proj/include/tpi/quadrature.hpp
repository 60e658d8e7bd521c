#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace tpi {

/// Discrete velocity nodes and weights for the Gaussian measure in 1D or 2D.
/// Nodes are stored so that node j and node size()-1-j are exact mirrors.
struct VelocityGrid {
    int dim = 1;
    std::vector<std::array<double, 2>> nodes;  // second component 0 in 1D
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::size_t mirror(std::size_t j) const { return size() - 1 - j; }
    /// Quadrature average of g(v_j) for a per-node array g.
    double average(const std::vector<double>& g) const;
};

/// Probabilists' Gauss-Hermite rule, nodes ascending, weights summing to 1.
VelocityGrid gauss_hermite_1d(int J);

/// Tensor product of two 1D rules, index j = a*J + b for (v_a, v_b).
VelocityGrid gauss_hermite_2d(int J_per_axis);

}  // namespace tpi
