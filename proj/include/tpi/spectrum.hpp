#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "tpi/eig.hpp"
#include "tpi/quadrature.hpp"
#include "tpi/spatial.hpp"
#include "tpi/system.hpp"

namespace tpi {

/// Fourier amplification matrix B = (w/eps)(MP - I) + D for one mode.
struct SymbolMatrix {
    ComplexMatrix B;
    std::vector<double> shape;    // diagonal of M (1+v, or (1+vx)(1+vy))
    std::vector<double> weights;  // every row of P
    std::vector<cplx> D;
    double omega_bar = 1.0;
    double eps = 1.0;

    ComplexMatrix M() const;
    ComplexMatrix P() const;
};

SymbolMatrix build_symbol(double omega_bar, double eps, std::array<double, 2> zeta, SchemeId scheme,
                          const VelocityGrid& vg, double dx);
inline SymbolMatrix build_symbol(double omega_bar, double eps, double zeta, SchemeId scheme,
                                 const VelocityGrid& vg, double dx) {
    return build_symbol(omega_bar, eps, {zeta, 0.0}, scheme, vg, dx);
}

/// Second-order expansion <D s> + (eps/w)(<D^2 s> - <D s>^2) of the dominant eigenvalue.
cplx dominant_expansion(double omega_bar, double eps, std::array<double, 2> zeta, SchemeId scheme,
                        const VelocityGrid& vg, double dx);
/// Two-term form: real part to O(eps/w), imaginary part leading term only.
cplx dominant_expansion_first_order_imag(double omega_bar, double eps, double zeta, SchemeId scheme,
                                         const VelocityGrid& vg, double dx);
/// eps -> 0 limit <D s> (equals <alpha> + i<beta v> in 1D).
cplx dominant_leading(std::array<double, 2> zeta, SchemeId scheme, const VelocityGrid& vg, double dx);

struct Eigenpoint {
    cplx lambda;
    int mode = 0;   // 1-based, i = 1..I in 1D, ix + I*(iy-1) in 2D
    int level = 0;  // index into SpectrumReport::disks
    bool dominant = false;
    int cluster = -1;
};

struct LevelDisk {
    double omega = 1.0;
    cplx center;
    double radius = 0.0;
};

struct Cluster {
    cplx center;
    double radius = 0.0;
    std::size_t count = 0;
    bool fast = true;
    double re_min = 0.0, re_max = 0.0;
    std::vector<int> levels;  // disks whose non-dominant eigenvalues fall in this cluster
};

struct ClusterOptions {
    double M_min = 3.0;
    double rel_gap = 0.02;
    double slow_radius = 0.0;  // absolute gap floor, usually max |lambda^(1)|
};

struct SpectrumReport {
    double eps = 1.0;
    double dx = 0.01;
    int dim = 1;
    int I = 0;
    std::vector<Eigenpoint> eigenvalues;
    std::vector<LevelDisk> disks;     // one per frequency level, descending omega
    std::vector<Cluster> clusters;    // most negative center first
    double fast_radius = 0.0;         // R_f
    std::vector<cplx> dominant;       // per mode, QR value at the reference level
    std::vector<cplx> dominant_lead;  // per mode, <D s>
    double slow_radius = 0.0;
    std::vector<double> gap_ratios;   // |c_k| / |c_{k+1}| for consecutive clusters
    std::vector<cplx> rhp;            // eigenvalues right of the imaginary axis
    std::vector<cplx> outside;        // containment violations
    bool continuous = false;          // density model: levels form a continuum
    std::size_t extra_slow_levels = 0;

    std::size_t fast_cluster_count() const;
    /// Non-dominant eigenvalues of one level block.
    std::vector<cplx> level_eigenvalues(int level, bool include_dominant = false) const;
};

/// Block-diagonal spectrum over all modes and frequency levels.
/// For the density kind every distinct cell value of rho0 is a level.
SpectrumReport full_spectrum(const CollisionModel& model, SchemeId scheme, const SpaceGrid& sg,
                             const VelocityGrid& vg, const std::vector<double>* rho0 = nullptr,
                             const ClusterOptions& opts = {}, int threads = 1);

/// Gap grouping then M_min merging; assigns cluster ids into eigs.
std::vector<Cluster> cluster(std::vector<Eigenpoint>& eigs, const ClusterOptions& opts);

/// Eigenvalues of the coupled physical-space operator with nu frozen at its
/// value for rho0 (dense, I*J <= 4000).
std::vector<cplx> coupled_spectrum(const CollisionModel& model, SchemeId scheme, const SpaceGrid& sg,
                                   const VelocityGrid& vg, const std::vector<double>* rho0 = nullptr);

/// CSV: mode_index,re_lambda,im_lambda,cluster_id
void write_spectrum_csv(std::ostream& os, const SpectrumReport& r);

}  // namespace tpi
