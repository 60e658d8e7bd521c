#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tpi/butcher.hpp"
#include "tpi/spectrum.hpp"
#include "tpi/system.hpp"

namespace tpi {

/// Level parameters of a telescopic projective integrator. Level l < L
/// takes K[l]+1 steps of size h_l and extrapolates over M[l]*h_l.
struct TpiSchedule {
    double h0 = 0.0;
    std::vector<int> K;
    std::vector<double> M;
    OuterMethod outer = OuterMethod::PFE;
    double dx = 0.0;  // for the CFL number, 0 if unknown
    std::vector<std::string> warnings;

    int levels() const { return static_cast<int>(M.size()); }
    /// h_0 .. h_L with h_{l+1} = (M_l + K_l + 1) h_l.
    std::vector<double> steps() const;
    double outer_step() const { return steps().back(); }
    double cfl() const { return dx > 0.0 ? outer_step() / dx : 0.0; }
    /// All M >= 1, K >= 0, L >= 1, h0 > 0.
    void validate() const;
    /// Weaker check used by the integrator: M >= 0 (M = 0 is pure damping).
    void validate_structure() const;
};

struct StabilityRegion {
    double inner_radius;     // (1/M)^(1/K)
    double dominant_center;  // 1 - 1/M
    double dominant_radius;  // 1/M
};

std::vector<StabilityRegion> stability_regions(const TpiSchedule& s);

/// ((M+1) s - M) s^K
cplx level_map(cplx s, double M, int K);

/// Scalar multiplier of one outer step given the level-(L-1) factor q.
cplx outer_map(cplx q, double M, int K, OuterMethod method);

/// sigma_L for a given innermost factor sigma_0.
cplx amplification(const TpiSchedule& s, cplx sigma0);

/// Largest M for which a level with K damping steps is [0,1]-stable (K = 1..10).
double table1_max_M(int K);

struct SelectionOptions {
    double M_min = 3.0;
    OuterMethod outer = OuterMethod::PFE;
    int boundary_points = 256;
};

/// Clustered-spectrum procedure: one projective level per separated fast cluster.
TpiSchedule select_clustered(const SpectrumReport& report, const SelectionOptions& opts = {});

/// [0,1]-stable procedure with fixed outer step h_L = C dx. h0 = eps / max nu(x, 0),
/// nu taken from rho0 for the density model and from the levels otherwise.
TpiSchedule select_zero_one_stable(const CollisionModel& model, const std::vector<double>& rho0, int K,
                                   double C, double dx, OuterMethod outer);

struct StabilityCheck {
    bool stable = true;
    std::vector<cplx> violations;  // lambda values with |sigma_L| > 1 + 1e-9
    double max_modulus = 0.0;
};

StabilityCheck verify_stability(const TpiSchedule& s, const std::vector<cplx>& lambdas);
StabilityCheck verify_stability(const TpiSchedule& s, const SpectrumReport& report);

/// JSON object with L, h0, K, M, h, CFL, outer (17 significant digits).
std::string schedule_json(const TpiSchedule& s);
/// Inverse of schedule_json (for verify on stored schedules).
TpiSchedule schedule_from_json(const std::string& text);

}  // namespace tpi
