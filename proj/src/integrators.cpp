#include "tpi/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpi/errors.hpp"
#include "tpi/output.hpp"

namespace tpi {

TpiIntegrator::TpiIntegrator(RhsOperator& op, TpiSchedule schedule)
    : op_(op), s_(std::move(schedule)), tableau_(tableau_for(s_.outer)) {
    s_.validate_structure();
    tableau_.validate();
    h_ = s_.steps();
    work_.resize(op_.size());
    prev_.resize(s_.levels());
    k_.assign(s_.levels(), 0);
}

void TpiIntegrator::inner_fe_step(std::vector<double>& y) {
    op_.eval(y.data(), work_.data());
    ++evals_;
    const double h0 = s_.h0;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h0 * work_[i];
}

void TpiIntegrator::run_sequence(int top, std::vector<double>& y, std::vector<double>& deriv, double t0) {
    std::fill(k_.begin(), k_.begin() + top + 1, 0);
    std::vector<double> start(top + 1, t0);  // time at which the current level-l sequence began
    for (;;) {
        // A step on level l begins whenever every lower level is at a fresh sequence.
        for (int l = 0; l <= top; ++l) {
            if (k_[l] == s_.K[l]) prev_[l] = y;
            if (k_[l] != 0) break;
        }
        inner_fe_step(y);
        ++k_[0];
        if (tracer) tracer(0, start[0] + k_[0] * h_[0]);
        int l = 0;
        while (k_[l] == s_.K[l] + 1) {
            if (l == top) {
                deriv.resize(y.size());
                const double inv = 1.0 / h_[top];
                for (std::size_t i = 0; i < y.size(); ++i) deriv[i] = (y[i] - prev_[top][i]) * inv;
                return;
            }
            const double M = s_.M[l];
            const std::vector<double>& p = prev_[l];
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += M * (y[i] - p[i]);
            k_[l] = 0;
            ++k_[l + 1];
            double t = start[l + 1] + k_[l + 1] * h_[l + 1];
            for (int m = 0; m <= l; ++m) start[m] = t;
            if (tracer) tracer(l + 1, t);
            ++l;
        }
    }
}

void TpiIntegrator::level_step(int level, std::vector<double>& y) {
    if (level < 1 || level >= s_.levels())
        throw std::invalid_argument("level_step: level must be in 1..L-1");
    std::vector<double> d;
    run_sequence(level - 1, y, d, 0.0);
    const double dist = s_.M[level - 1] * h_[level - 1];
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += dist * d[i];
}

void TpiIntegrator::outer_step(std::vector<double>& y) {
    const int L = s_.levels();
    const int top = L - 1;
    const double h = h_[top];
    const double hL = h_[L];
    const double M = s_.M[top];
    const int K = s_.K[top];
    const int S = tableau_.stages();
    std::vector<std::vector<double>> kv(S);
    run_sequence(top, y, kv[0], 0.0);
    if (S > 1) {
        std::vector<double> seed(y.size());
        for (int s = 1; s < S; ++s) {
            const double cs = tableau_.c[s];
            const double coef = cs * hL - (K + 1.0) * h;
            for (std::size_t i = 0; i < y.size(); ++i) {
                double acc = 0.0;
                for (int m = 0; m < s; ++m) acc += tableau_.a[s][m] * kv[m][i];
                seed[i] = y[i] + coef * acc / cs;
            }
            run_sequence(top, seed, kv[s], cs * hL - (K + 1.0) * h);
        }
    }
    const double dist = M * h;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double acc = 0.0;
        for (int s = 0; s < S; ++s) acc += tableau_.b[s] * kv[s][i];
        y[i] += dist * acc;
    }
}

void inner_fe_step(std::vector<double>& y, RhsOperator& op, double h0) {
    std::vector<double> f(y.size());
    op.eval(y.data(), f.data());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h0 * f[i];
}

void tpi_level_step(int level, std::vector<double>& y, const TpiSchedule& s, RhsOperator& op) {
    TpiIntegrator(op, s).level_step(level, y);
}

void tpi_outer_step(std::vector<double>& y, const TpiSchedule& s, RhsOperator& op) {
    TpiIntegrator(op, s).outer_step(y);
}

double tpi_time(long n, const std::vector<int>& k, const TpiSchedule& s) {
    const auto h = s.steps();
    double t = n * h.back();
    for (std::size_t l = 0; l < k.size() && l + 1 < h.size(); ++l) t += k[l] * h[l];
    return t;
}

namespace {

double inf_norm(const std::vector<double>& y) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

Trajectory integrate(const std::vector<double>& y0, const TpiSchedule& s_in, RhsOperator& op, double t_end,
                     const IntegrateOptions& opts) {
    if (!(t_end >= 0.0)) throw std::invalid_argument("integrate: t_end must be nonnegative");
    if (y0.size() != op.size()) throw std::invalid_argument("integrate: state size mismatch");
    Trajectory tr;
    tr.schedule = s_in;
    tr.schedule.validate();
    tr.times.push_back(0.0);
    tr.states.push_back(y0);
    if (opts.on_step) opts.on_step(0, 0.0, y0);
    if (t_end == 0.0) return tr;

    const double hL = tr.schedule.outer_step();
    long n = std::max(1L, std::lround(t_end / hL));
    const double target = t_end / n;
    if (std::abs(target - hL) > opts.max_step_adjust * hL)
        throw ScheduleError("t_end = " + fmt17(t_end) + " is not reachable with h_L = " + fmt17(hL) +
                            " within the allowed step adjustment");
    if (target != hL) {
        const int top = tr.schedule.levels() - 1;
        const double h = tr.schedule.steps()[top];
        tr.schedule.M[top] = target / h - tr.schedule.K[top] - 1.0;
        tr.schedule.validate();
    }

    TpiIntegrator integ(op, tr.schedule);
    const double h_out = tr.schedule.outer_step();
    const double limit = opts.growth_limit * std::max(inf_norm(y0), 1e-300);
    std::vector<double> y = y0;
    for (long step = 1; step <= n; ++step) {
        try {
            integ.outer_step(y);
        } catch (const NonFiniteError& e) {
            throw BlowUpError(std::string(e.what()) + " during outer step " + std::to_string(step));
        }
        const double t = step == n ? t_end : step * h_out;
        double norm = inf_norm(y);
        if (!(norm <= limit))
            throw BlowUpError("instability detected at outer step " + std::to_string(step) + " (t = " + fmt17(t) +
                              "): max |f| = " + fmt17(norm));
        if (opts.keep_states || step == n) {
            tr.times.push_back(t);
            tr.states.push_back(y);
        }
        if (opts.on_step) opts.on_step(step, t, y);
    }
    tr.steps = n;
    tr.rhs_evaluations = integ.rhs_evaluations();
    return tr;
}

void write_density_csv(std::ostream& os, const SpaceGrid& sg, const std::vector<double>& rho) {
    os << (sg.dim == 1 ? "x,rho\n" : "x,y,rho\n");
    for (std::size_t c = 0; c < sg.cells(); ++c) {
        auto x = sg.center(c);
        os << fmt17(x[0]) << ',';
        if (sg.dim == 2) os << fmt17(x[1]) << ',';
        os << fmt17(rho[c]) << '\n';
    }
}

}  // namespace tpi
