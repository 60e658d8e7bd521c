#pragma once

#include <cstddef>
#include <vector>

#include "tpi/state.hpp"

namespace tpi {

enum class CollisionKind { constant, profile, density };

/// Collision frequency nu(x, t): a constant, a piecewise-constant profile
/// omega(x) over [0,1) (by the x coordinate), or the local density.
struct CollisionModel {
    CollisionKind kind = CollisionKind::constant;
    double eps = 1e-5;
    double nu_bar = 1.0;
    std::vector<double> levels;       // profile values omega_l
    std::vector<double> breakpoints;  // 0 = b_0 < ... < b_L = 1, level l on [b_l, b_{l+1})

    static CollisionModel constant(double nu, double eps);
    /// Levels on equal-width zones of [0,1), in the given order.
    static CollisionModel profile(std::vector<double> levels, double eps);
    static CollisionModel density(double eps);

    void validate() const;
    double profile_at(double x) const;
    /// Distinct frequency levels, descending (constant and profile kinds).
    std::vector<double> frequency_levels() const;
};

/// Right-hand side of a semi-discrete ODE system y' = F(y).
class RhsOperator {
public:
    virtual ~RhsOperator() = default;
    virtual std::size_t size() const = 0;
    virtual void eval(const double* y, double* out) = 0;
};

/// -D_{x,v}(f) + (nu/eps)(M(rho) - f) on a periodic grid. Owns scratch memory,
/// so one instance per concurrent integration.
class BgkSystem : public RhsOperator {
public:
    BgkSystem(SpaceGrid sg, VelocityGrid vg, CollisionModel model, SchemeId scheme);

    std::size_t size() const override { return sg_.cells() * vg_.size(); }
    void eval(const double* f, double* out) override;

    /// Collision part only, written (not accumulated) into out.
    void collision(const double* f, double* out);

    /// Use the given per-cell frequencies instead of the model (linearizes the
    /// density kind around a fixed state).
    void freeze_frequency(std::vector<double> nu);

    const SpaceGrid& space() const { return sg_; }
    const VelocityGrid& velocity() const { return vg_; }
    const CollisionModel& model() const { return model_; }
    SchemeId scheme() const { return scheme_; }

private:
    SpaceGrid sg_;
    VelocityGrid vg_;
    CollisionModel model_;
    SchemeId scheme_;
    std::vector<double> shape_;
    std::vector<double> nu_cell_;  // fixed frequencies for constant/profile
    std::vector<double> rho_;
    bool frozen_ = false;
};

/// Convenience wrapper: rhs of a StateField. The system is autonomous, t is unused.
StateField rhs(const StateField& f, const CollisionModel& model, SchemeId scheme, double t = 0.0);

}  // namespace tpi
