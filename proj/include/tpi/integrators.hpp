#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <vector>

#include "tpi/butcher.hpp"
#include "tpi/spatial.hpp"
#include "tpi/system.hpp"
#include "tpi/tpi_params.hpp"

namespace tpi {

/// Executes a TpiSchedule on y' = F(y). Levels are driven by an explicit
/// per-level counter stack rather than recursion.
class TpiIntegrator {
public:
    TpiIntegrator(RhsOperator& op, TpiSchedule schedule);

    const TpiSchedule& schedule() const { return s_; }
    std::size_t rhs_evaluations() const { return evals_; }

    /// Called after every completed step on levels 0..L-1 with the level and
    /// its time relative to the start of the current outer step.
    std::function<void(int level, double t)> tracer;

    void inner_fe_step(std::vector<double>& y);
    /// One step of size h_level, 1 <= level <= L-1.
    void level_step(int level, std::vector<double>& y);
    /// One outer step of size h_L with the schedule's outer method.
    void outer_step(std::vector<double>& y);

private:
    // K_top+1 steps of level `top` starting from y; leaves y at the last
    // state and deriv = (y_{K+1} - y_K) / h_top.
    void run_sequence(int top, std::vector<double>& y, std::vector<double>& deriv, double t0);

    RhsOperator& op_;
    TpiSchedule s_;
    ButcherTableau tableau_;
    std::vector<double> h_;
    std::vector<double> work_;
    std::vector<std::vector<double>> prev_;
    std::vector<int> k_;
    std::size_t evals_ = 0;
};

void inner_fe_step(std::vector<double>& y, RhsOperator& op, double h0);
void tpi_level_step(int level, std::vector<double>& y, const TpiSchedule& s, RhsOperator& op);
void tpi_outer_step(std::vector<double>& y, const TpiSchedule& s, RhsOperator& op);

/// t = n h_L + sum_l k_l h_l for PFE-level counters k (index l = level).
double tpi_time(long n, const std::vector<int>& k, const TpiSchedule& s);

struct IntegrateOptions {
    double growth_limit = 1e3;  // blow-up when ||y||_inf > growth_limit * ||y0||_inf
    double max_step_adjust = 1e-3;
    bool keep_states = true;
    std::function<void(long n, double t, const std::vector<double>& y)> on_step;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // includes y0; all outer steps if keep_states
    TpiSchedule schedule;                     // as used, after the h_L adjustment
    long steps = 0;
    std::size_t rhs_evaluations = 0;
};

/// Integrates to t_end with round(t_end / h_L) outer steps, adjusting M_{L-1}
/// so that the steps hit t_end (relative change of h_L at most max_step_adjust).
Trajectory integrate(const std::vector<double>& y0, const TpiSchedule& s, RhsOperator& op, double t_end,
                     const IntegrateOptions& opts = {});

/// Snapshot CSV with columns x[,y],rho.
void write_density_csv(std::ostream& os, const SpaceGrid& sg, const std::vector<double>& rho);

}  // namespace tpi
