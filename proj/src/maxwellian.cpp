#include "tpi/maxwellian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tpi {

MomentReport moments(const StateField& f) {
    const VelocityGrid& vg = f.vel;
    const std::size_t J = vg.size();
    const int D = vg.dim;
    MomentReport out;
    out.cells.resize(f.space.cells());
    for (std::size_t c = 0; c < f.space.cells(); ++c) {
        const double* fc = f.values.data() + c * J;
        MomentSet& m = out.cells[c];
        double mom[2] = {0.0, 0.0};
        for (std::size_t j = 0; j < J; ++j) {
            m.rho += vg.weights[j] * fc[j];
            for (int d = 0; d < D; ++d) mom[d] += vg.weights[j] * vg.nodes[j][d] * fc[j];
        }
        if (m.rho < 0.0) out.negative_cells.push_back(c);
        if (m.rho <= rho_floor) continue;
        m.resolved = true;
        for (int d = 0; d < D; ++d) m.vbar[d] = mom[d] / m.rho;
        double e = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            double s = 0.0;
            for (int d = 0; d < D; ++d) s += (vg.nodes[j][d] - m.vbar[d]) * (vg.nodes[j][d] - m.vbar[d]);
            e += vg.weights[j] * s * fc[j];
        }
        m.T = e / (D * m.rho);
    }
    return out;
}

void density(const double* f, std::size_t cells, const VelocityGrid& vg, double* rho) {
    const std::size_t J = vg.size();
    for (std::size_t c = 0; c < cells; ++c) {
        double s = 0.0;
        for (std::size_t j = 0; j < J; ++j) s += vg.weights[j] * f[c * J + j];
        rho[c] = s;
    }
}

std::vector<double> density(const StateField& f) {
    std::vector<double> rho(f.space.cells());
    density(f.values.data(), rho.size(), f.vel, rho.data());
    return rho;
}

std::vector<double> equilibrium_shape(const VelocityGrid& vg) {
    std::vector<double> e(vg.size());
    for (std::size_t j = 0; j < vg.size(); ++j) {
        e[j] = 1.0 + vg.nodes[j][0];
        if (vg.dim == 2) e[j] *= 1.0 + vg.nodes[j][1];
    }
    return e;
}

StateField linearized_maxwellian(const std::vector<double>& rho, const SpaceGrid& sg,
                                 const VelocityGrid& vg) {
    if (rho.size() != sg.cells()) throw std::invalid_argument("linearized_maxwellian: density size mismatch");
    StateField f(sg, vg);
    const auto e = equilibrium_shape(vg);
    for (std::size_t c = 0; c < sg.cells(); ++c)
        for (std::size_t j = 0; j < vg.size(); ++j) f.at(c, j) = rho[c] * e[j];
    return f;
}

double maxwellian(const MomentSet& m, const std::array<double, 2>& v, int dim) {
    if (m.T <= 0.0) throw std::invalid_argument("maxwellian: temperature must be positive");
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += (v[d] - m.vbar[d]) * (v[d] - m.vbar[d]);
    return m.rho * std::pow(2.0 * std::numbers::pi * m.T, -0.5 * dim) * std::exp(-r2 / (2.0 * m.T));
}

}  // namespace tpi
