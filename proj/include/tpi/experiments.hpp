#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tpi/config.hpp"
#include "tpi/integrators.hpp"
#include "tpi/spatial.hpp"
#include "tpi/system.hpp"
#include "tpi/tpi_params.hpp"

namespace tpi {

/// Initial density as a function on the periodic unit interval or square.
using DensityProfile = std::function<double(double x, double y)>;

/// step_profile_1d, gaussian_1d, gaussian_2d, or "table" (piecewise constant per cell).
DensityProfile density_profile(const std::string& id, const std::vector<double>& table = {});
/// Supremum of the profile over the domain.
double profile_sup(const std::string& id, const std::vector<double>& table = {});

/// Profile sampled at cell centres.
std::vector<double> initial_density(const std::string& id, const SpaceGrid& sg, const std::vector<double>& table = {});

/// rho0 transported with unit speed along every axis, sampled at cell centres.
std::vector<double> exact_advection(const DensityProfile& rho0, double t, const SpaceGrid& sg);

enum class ScheduleSource { zero_one_stable, clustered, fixed };

struct ExperimentConfig {
    int dim = 1;
    double eps = 1e-5;
    int cells = 200;  // per axis
    int J = 10;       // velocities per axis
    SchemeId scheme{SchemeFamily::upwind, 1};
    double t_end = 1.0;
    std::string initial = "step_profile_1d";
    std::vector<double> initial_table;
    CollisionModel collision = CollisionModel::density(1e-5);

    ScheduleSource source = ScheduleSource::zero_one_stable;
    int K = 5;
    double C = 0.5;
    double M_min = 3.0;
    OuterMethod outer = OuterMethod::PRK4;
    bool h0_from_samples = false;  // h0 from sampled rho0 instead of its supremum
    TpiSchedule fixed_schedule;

    int snapshots = 0;  // intermediate density snapshots besides t = 0 and t_end

    double dx() const { return 1.0 / cells; }
    void validate() const;
    static ExperimentConfig from_config(const KeyValueConfig& kv);
};

struct ErrorReport {
    double L1 = 0.0, L2 = 0.0, Linf = 0.0;
    double mass_drift = 0.0;  // max relative |m(t) - m(0)| over outer steps
    double min_rho = 0.0, max_rho = 0.0;
};

struct Observation {
    double t;
    double mass;
    double min_rho;
    double max_rho;
};

struct Snapshot {
    double t;
    std::vector<double> rho;
};

struct ExperimentResult {
    TpiSchedule schedule;
    std::vector<Snapshot> snapshots;
    std::vector<Observation> observables;
    std::vector<double> rho_final, rho_exact;
    ErrorReport errors;
    long steps = 0;
    std::size_t rhs_evaluations = 0;
};

/// Norms of a - b weighted by the cell volume.
ErrorReport error_norms(const std::vector<double>& a, const std::vector<double>& b, const SpaceGrid& sg);

TpiSchedule build_schedule(const ExperimentConfig& cfg, int threads = 1);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace tpi
