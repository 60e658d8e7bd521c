#include "tpi/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "tpi/errors.hpp"
#include "tpi/maxwellian.hpp"
#include "tpi/quadrature.hpp"
#include "tpi/spectrum.hpp"

namespace tpi {

namespace {

double wrap(double x) { return x - std::floor(x); }

}  // namespace

DensityProfile density_profile(const std::string& id, const std::vector<double>& table) {
    if (id == "step_profile_1d")
        return [](double x, double) {
            x = wrap(x);
            if (0.2 <= x && x < 0.4) return 1.0;
            if (0.6 <= x && x < 0.8) return 0.5;
            return 0.1;
        };
    if (id == "gaussian_1d")
        return [](double x, double) { return std::exp(-100.0 * (x - 0.5) * (x - 0.5)); };
    if (id == "gaussian_2d")
        return [](double x, double y) { return std::exp(-100.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5))); };
    if (id == "table") {
        if (table.empty()) throw ConfigError("initial density 'table' needs values");
        return [table](double x, double) {
            std::size_t n = table.size();
            std::size_t i = std::min(n - 1, static_cast<std::size_t>(wrap(x) * n));
            return table[i];
        };
    }
    throw ConfigError("unknown initial density '" + id + "'");
}

double profile_sup(const std::string& id, const std::vector<double>& table) {
    if (id == "step_profile_1d" || id == "gaussian_1d" || id == "gaussian_2d") return 1.0;
    if (id == "table" && !table.empty()) return *std::max_element(table.begin(), table.end());
    throw ConfigError("unknown initial density '" + id + "'");
}

std::vector<double> initial_density(const std::string& id, const SpaceGrid& sg, const std::vector<double>& table) {
    return exact_advection(density_profile(id, table), 0.0, sg);
}

std::vector<double> exact_advection(const DensityProfile& rho0, double t, const SpaceGrid& sg) {
    std::vector<double> out(sg.cells());
    for (std::size_t c = 0; c < sg.cells(); ++c) {
        auto x = sg.center(c);
        // Wrapping before evaluation keeps full periods exact.
        double xs = wrap(x[0] - t);
        double ys = sg.dim == 2 ? wrap(x[1] - t) : 0.0;
        out[c] = rho0(xs, ys);
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("dimension must be 1 or 2");
    if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
    if (cells < 3) throw ConfigError("cells must be at least 3");
    if (J < 1) throw ConfigError("velocities must be positive");
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
    if (initial == "gaussian_2d" && dim != 2) throw ConfigError("gaussian_2d needs dimension = 2");
    if ((initial == "step_profile_1d" || initial == "gaussian_1d") && dim != 1)
        throw ConfigError(initial + " needs dimension = 1");
    if (initial == "table" && initial_table.size() != static_cast<std::size_t>(cells))
        throw ConfigError("initial table must have one value per cell");
    if (source == ScheduleSource::zero_one_stable && (K < 1 || K > 10))
        throw ConfigError("K must be in 1..10 for the [0,1]-stable procedure");
    if (source == ScheduleSource::clustered && collision.kind == CollisionKind::density)
        throw ConfigError("the clustered procedure needs a constant or profile collision model");
    if (!(C > 0.0)) throw ConfigError("C must be positive");
    if (snapshots < 0) throw ConfigError("snapshots must be nonnegative");
    try {
        collision.validate();
        tpi::validate(scheme);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& kv) {
    for (const auto& s : kv.sections())
        if (s != "problem" && s != "collision" && s != "schedule" && s != "output" && s != "sweep")
            throw ConfigError(kv.source() + ": unknown section [" + s + "]");
    kv.require_known("problem", {"dimension", "epsilon", "cells", "dx", "velocities", "scheme", "t_end", "initial",
                                 "initial_table"});
    kv.require_known("collision", {"kind", "nu", "levels", "breakpoints"});
    kv.require_known("schedule", {"procedure", "K", "C", "M_min", "outer", "h0_source", "h0", "K_list", "M_list"});
    kv.require_known("output", {"snapshots"});
    kv.require_known("sweep", {"parameter", "values"});

    ExperimentConfig c;
    c.dim = kv.get_int("problem", "dimension", 1);
    c.eps = kv.get_double("problem", "epsilon", 1e-5);
    if (kv.has("problem", "dx")) {
        double dx = kv.get_double("problem", "dx");
        if (!(dx > 0.0)) throw ConfigError(kv.source() + ": dx must be positive");
        c.cells = static_cast<int>(std::lround(1.0 / dx));
        if (std::abs(c.cells * dx - 1.0) > 1e-9) throw ConfigError(kv.source() + ": 1/dx must be an integer");
    } else {
        c.cells = kv.get_int("problem", "cells", 200);
    }
    c.J = kv.get_int("problem", "velocities", 10);
    try {
        c.scheme = SchemeId::parse(kv.get_string("problem", "scheme", "upwind1"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(kv.source() + ": " + e.what());
    }
    c.t_end = kv.get_double("problem", "t_end", 1.0);
    c.initial = kv.get_string("problem", "initial", c.dim == 1 ? "step_profile_1d" : "gaussian_2d");
    if (kv.has("problem", "initial_table")) c.initial_table = kv.get_list("problem", "initial_table");

    std::string kind = kv.get_string("collision", "kind", "density");
    try {
        if (kind == "density") {
            c.collision = CollisionModel::density(c.eps);
        } else if (kind == "constant") {
            c.collision = CollisionModel::constant(kv.get_double("collision", "nu", 1.0), c.eps);
        } else if (kind == "profile") {
            c.collision = CollisionModel::profile(kv.get_list("collision", "levels"), c.eps);
            if (kv.has("collision", "breakpoints")) {
                c.collision.breakpoints = kv.get_list("collision", "breakpoints");
                c.collision.validate();
            }
        } else {
            throw ConfigError(kv.source() + ": unknown collision kind '" + kind + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(kv.source() + ": " + e.what());
    }

    std::string proc = kv.get_string("schedule", "procedure", "zero_one_stable");
    if (proc == "zero_one_stable")
        c.source = ScheduleSource::zero_one_stable;
    else if (proc == "clustered")
        c.source = ScheduleSource::clustered;
    else if (proc == "fixed")
        c.source = ScheduleSource::fixed;
    else
        throw ConfigError(kv.source() + ": unknown schedule procedure '" + proc + "'");
    c.K = kv.get_int("schedule", "K", 5);
    c.C = kv.get_double("schedule", "C", 0.5);
    c.M_min = kv.get_double("schedule", "M_min", 3.0);
    try {
        c.outer = parse_outer_method(kv.get_string("schedule", "outer", "PRK4"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(kv.source() + ": " + e.what());
    }
    std::string h0src = kv.get_string("schedule", "h0_source", "supremum");
    if (h0src != "supremum" && h0src != "samples")
        throw ConfigError(kv.source() + ": h0_source must be 'supremum' or 'samples'");
    c.h0_from_samples = h0src == "samples";
    if (c.source == ScheduleSource::fixed) {
        c.fixed_schedule.h0 = kv.get_double("schedule", "h0");
        for (double k : kv.get_list("schedule", "K_list")) c.fixed_schedule.K.push_back(static_cast<int>(k));
        c.fixed_schedule.M = kv.get_list("schedule", "M_list");
        c.fixed_schedule.outer = c.outer;
        c.fixed_schedule.dx = c.dx();
        try {
            c.fixed_schedule.validate();
        } catch (const ScheduleError& e) {
            throw ConfigError(kv.source() + ": " + e.what());
        }
    }
    c.snapshots = kv.get_int("output", "snapshots", 0);
    c.validate();
    return c;
}

ErrorReport error_norms(const std::vector<double>& a, const std::vector<double>& b, const SpaceGrid& sg) {
    ErrorReport r;
    const double vol = sg.dim == 1 ? sg.dx : sg.dx * sg.dx;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::abs(a[i] - b[i]);
        r.L1 += vol * d;
        r.L2 += vol * d * d;
        r.Linf = std::max(r.Linf, d);
    }
    r.L2 = std::sqrt(r.L2);
    return r;
}

TpiSchedule build_schedule(const ExperimentConfig& cfg, int threads) {
    const SpaceGrid sg(cfg.dim, cfg.cells);
    switch (cfg.source) {
        case ScheduleSource::fixed: return cfg.fixed_schedule;
        case ScheduleSource::zero_one_stable: {
            std::vector<double> rho = cfg.h0_from_samples
                                          ? initial_density(cfg.initial, sg, cfg.initial_table)
                                          : std::vector<double>{profile_sup(cfg.initial, cfg.initial_table)};
            return select_zero_one_stable(cfg.collision, rho, cfg.K, cfg.C, sg.dx, cfg.outer);
        }
        case ScheduleSource::clustered: {
            VelocityGrid vg = cfg.dim == 1 ? gauss_hermite_1d(cfg.J) : gauss_hermite_2d(cfg.J);
            // Nonlinear schemes are analysed through the upwind symbol of the same order.
            SchemeId proxy{SchemeFamily::upwind, std::min(cfg.scheme.order, 3)};
            ClusterOptions co;
            co.M_min = cfg.M_min;
            SpectrumReport rep = full_spectrum(cfg.collision, proxy, sg, vg, nullptr, co, threads);
            SelectionOptions so;
            so.M_min = cfg.M_min;
            so.outer = cfg.outer;
            return select_clustered(rep, so);
        }
    }
    throw ScheduleError("unknown schedule source");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const SpaceGrid sg(cfg.dim, cfg.cells);
    const VelocityGrid vg = cfg.dim == 1 ? gauss_hermite_1d(cfg.J) : gauss_hermite_2d(cfg.J);
    ExperimentResult res;
    res.schedule = build_schedule(cfg);

    const DensityProfile profile = density_profile(cfg.initial, cfg.initial_table);
    const std::vector<double> rho0 = exact_advection(profile, 0.0, sg);
    StateField f0 = linearized_maxwellian(rho0, sg, vg);
    BgkSystem sys(sg, vg, cfg.collision, cfg.scheme);

    const double vol = sg.dim == 1 ? sg.dx : sg.dx * sg.dx;
    const double h_est = res.schedule.outer_step();
    const long n_est = cfg.t_end > 0.0 ? std::max(1L, std::lround(cfg.t_end / h_est)) : 0;
    const long every = cfg.snapshots > 0 ? std::max(1L, n_est / (cfg.snapshots + 1)) : 0;
    std::vector<double> rho(sg.cells());
    double mass0 = 0.0;

    IntegrateOptions io;
    io.keep_states = false;
    io.on_step = [&](long n, double t, const std::vector<double>& y) {
        density(y.data(), sg.cells(), vg, rho.data());
        double m = 0.0;
        for (double r : rho) m += vol * r;
        auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
        res.observables.push_back({t, m, *lo, *hi});
        if (n == 0) mass0 = m;
        if (n == 0 || n == n_est || (every > 0 && n % every == 0)) res.snapshots.push_back({t, rho});
    };
    Trajectory tr = integrate(f0.values, res.schedule, sys, cfg.t_end, io);
    res.schedule = tr.schedule;
    res.steps = tr.steps;
    res.rhs_evaluations = tr.rhs_evaluations;
    res.rho_final = res.snapshots.back().rho;
    res.rho_exact = exact_advection(profile, cfg.t_end, sg);
    res.errors = error_norms(res.rho_final, res.rho_exact, sg);
    res.errors.min_rho = INFINITY;
    res.errors.max_rho = -INFINITY;
    for (const auto& o : res.observables) {
        res.errors.min_rho = std::min(res.errors.min_rho, o.min_rho);
        res.errors.max_rho = std::max(res.errors.max_rho, o.max_rho);
        if (mass0 != 0.0) res.errors.mass_drift = std::max(res.errors.mass_drift, std::abs(o.mass - mass0) / std::abs(mass0));
    }
    return res;
}

}  // namespace tpi
