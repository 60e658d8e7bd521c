#include "tpi/system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "tpi/errors.hpp"
#include "tpi/maxwellian.hpp"

namespace tpi {

CollisionModel CollisionModel::constant(double nu, double eps) {
    CollisionModel m;
    m.kind = CollisionKind::constant;
    m.nu_bar = nu;
    m.eps = eps;
    m.validate();
    return m;
}

CollisionModel CollisionModel::profile(std::vector<double> levels, double eps) {
    CollisionModel m;
    m.kind = CollisionKind::profile;
    m.eps = eps;
    const std::size_t n = levels.size();
    m.levels = std::move(levels);
    for (std::size_t l = 0; l <= n; ++l) m.breakpoints.push_back(double(l) / double(n));
    m.validate();
    return m;
}

CollisionModel CollisionModel::density(double eps) {
    CollisionModel m;
    m.kind = CollisionKind::density;
    m.eps = eps;
    m.validate();
    return m;
}

void CollisionModel::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("collision model: eps must be positive");
    if (kind == CollisionKind::constant && !(nu_bar > 0.0))
        throw std::invalid_argument("collision model: nu must be positive");
    if (kind == CollisionKind::profile) {
        if (levels.empty()) throw std::invalid_argument("collision model: profile needs levels");
        for (double w : levels)
            if (!(w > 0.0)) throw std::invalid_argument("collision model: omega levels must be positive");
        if (breakpoints.size() != levels.size() + 1 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
            throw std::invalid_argument("collision model: breakpoints must partition [0,1)");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i] > breakpoints[i - 1]))
                throw std::invalid_argument("collision model: breakpoints must increase");
    }
}

double CollisionModel::profile_at(double x) const {
    if (kind == CollisionKind::constant) return nu_bar;
    if (kind != CollisionKind::profile) throw std::logic_error("profile_at on density model");
    x -= std::floor(x);
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    std::size_t l = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - breakpoints.begin() - 1, 0), levels.size() - 1);
    return levels[l];
}

std::vector<double> CollisionModel::frequency_levels() const {
    if (kind == CollisionKind::constant) return {nu_bar};
    if (kind == CollisionKind::density) throw std::logic_error("density model has no fixed levels");
    std::vector<double> out = levels;
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

BgkSystem::BgkSystem(SpaceGrid sg, VelocityGrid vg, CollisionModel model, SchemeId scheme)
    : sg_(sg), vg_(std::move(vg)), model_(std::move(model)), scheme_(scheme) {
    model_.validate();
    validate(scheme_);
    if (vg_.dim != sg_.dim) throw std::invalid_argument("BgkSystem: velocity and space dimension differ");
    shape_ = equilibrium_shape(vg_);
    rho_.resize(sg_.cells());
    if (model_.kind != CollisionKind::density) {
        nu_cell_.resize(sg_.cells());
        for (std::size_t c = 0; c < sg_.cells(); ++c) nu_cell_[c] = model_.profile_at(sg_.center(c)[0]);
    }
}

void BgkSystem::collision(const double* f, double* out) {
    const std::size_t J = vg_.size();
    const std::size_t cells = sg_.cells();
    density(f, cells, vg_, rho_.data());
    const double inv_eps = 1.0 / model_.eps;
    for (std::size_t c = 0; c < cells; ++c) {
        const double nu = model_.kind == CollisionKind::density && !frozen_ ? rho_[c] : nu_cell_[c];
        const double rate = nu * inv_eps;
        const double r = rho_[c];
        const double* fc = f + c * J;
        double* oc = out + c * J;
        for (std::size_t j = 0; j < J; ++j) oc[j] = rate * (r * shape_[j] - fc[j]);
    }
}

void BgkSystem::freeze_frequency(std::vector<double> nu) {
    if (nu.size() != sg_.cells()) throw std::invalid_argument("freeze_frequency: size mismatch");
    nu_cell_ = std::move(nu);
    frozen_ = true;
}

void BgkSystem::eval(const double* f, double* out) {
    collision(f, out);
    add_transport(f, out, sg_, vg_, scheme_);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(out[i])) {
            std::size_t cell = i / vg_.size();
            throw NonFiniteError("non-finite right-hand side in cell " + std::to_string(cell), cell);
        }
}

StateField rhs(const StateField& f, const CollisionModel& model, SchemeId scheme, double) {
    BgkSystem sys(f.space, f.vel, model, scheme);
    StateField out(f.space, f.vel);
    sys.eval(f.values.data(), out.values.data());
    return out;
}

}  // namespace tpi
