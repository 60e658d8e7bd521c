// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit
// status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tpi/experiments.hpp"
#include "tpi/integrators.hpp"
#include "tpi/output.hpp"
#include "tpi/spectrum.hpp"
#include "tpi/tpi_params.hpp"

using namespace tpi;

namespace {

// Tolerances.
constexpr double tol_M_clustered = 0.05;
constexpr double tol_M_zero_one = 0.01;
constexpr double tol_cfl = 0.01;
constexpr double tol_cfl_four_level = 0.02;
constexpr double tol_Rf = 0.5;
constexpr double ratio_lo = 3.0, ratio_hi = 5.0;  // error reduction per eps halving
constexpr double tol_scalar = 1e-13;
constexpr double tol_max_principle = 1e-10;
constexpr double overshoot_upwind = 1.01;
constexpr double overshoot_weno = 1.001;
constexpr double tol_mass_2d = 1e-8;
constexpr double tol_inner_shift = 0.01;
constexpr double tol_outer_scaling = 0.05;

int failures = 0;

void report(int id, bool ok, const std::string& what, double seconds) {
    std::printf("criterion %2d: %s  %s  (%.1f s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string list(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(6);
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << '}';
    return os.str();
}

std::string list(const std::vector<int>& v) { return list(std::vector<double>(v.begin(), v.end())); }

bool close_all(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (!(std::abs(got[i] - want[i]) <= tol)) return false;
    return true;
}

const SchemeId up1{SchemeFamily::upwind, 1};

SpectrumReport profile_report(const std::vector<double>& w, double eps) {
    return full_spectrum(CollisionModel::profile(w, eps), up1, SpaceGrid(1, 100), gauss_hermite_1d(10), nullptr, {}, 4);
}

TpiSchedule clustered(const std::vector<double>& w, double eps, OuterMethod outer = OuterMethod::PFE) {
    SelectionOptions o;
    o.outer = outer;
    return select_clustered(profile_report(w, eps), o);
}

template <class F>
void run(int id, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string what;
    try {
        ok = body(what);
    } catch (const std::exception& e) {
        what += std::string(" exception: ") + e.what();
        ok = false;
    }
    report(id, ok, what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

class RotationBlocks : public RhsOperator {
public:
    explicit RotationBlocks(std::vector<cplx> l) : lam_(std::move(l)) {}
    std::size_t size() const override { return 2 * lam_.size(); }
    void eval(const double* y, double* out) override {
        for (std::size_t k = 0; k < lam_.size(); ++k) {
            cplx z = lam_[k] * cplx(y[2 * k], y[2 * k + 1]);
            out[2 * k] = z.real();
            out[2 * k + 1] = z.imag();
        }
    }

private:
    std::vector<cplx> lam_;
};

ExperimentConfig benchmark_1d(const std::string& scheme) {
    ExperimentConfig c;
    c.dim = 1;
    c.eps = 1e-5;
    c.collision = CollisionModel::density(c.eps);
    c.cells = 200;
    c.J = 10;
    c.scheme = SchemeId::parse(scheme);
    c.t_end = 1.0;
    c.initial = "step_profile_1d";
    c.K = 5;
    c.C = 0.5;
    c.outer = OuterMethod::PRK4;
    return c;
}

}  // namespace

int main() {
    run(1, [](std::string& what) {
        auto s = clustered({1.0, 0.1}, 1e-5);
        what = "two-level clustered: M=" + list(s.M) + " K=" + list(s.K) + " CFL=" + std::to_string(s.cfl());
        return s.levels() == 2 && close_all(s.M, {9.0, 75.82}, tol_M_clustered) && s.K == std::vector<int>{1, 2} &&
               std::abs(s.cfl() - 0.87) <= tol_cfl && std::abs(s.h0 - 1e-5) <= 1e-15;
    });

    run(2, [](std::string& what) {
        auto s = clustered({1.0, 0.9, 0.15, 0.1, 0.01, 0.001}, 1e-5);
        what = "no-gap clustered: M=" + list(s.M) + " K=" + list(s.K) + " CFL=" + std::to_string(s.cfl());
        return s.levels() == 2 && close_all(s.M, {5.67, 12.09}, tol_M_clustered) && s.K == std::vector<int>{2, 3} &&
               std::abs(s.cfl() - 0.14) <= tol_cfl;
    });

    run(3, [](std::string& what) {
        auto s = clustered({1.0, 0.2, 0.01, 0.002}, 1e-6, OuterMethod::PRK4);
        what = "four-level clustered PRK4: M=" + list(s.M) + " K=" + list(s.K) + " CFL=" + std::to_string(s.cfl());
        return s.levels() == 4 && close_all(s.M, {4.00, 15.81, 3.74, 13.88}, tol_M_clustered) &&
               s.K == std::vector<int>{1, 1, 1, 4} && std::abs(s.cfl() - 1.16) <= tol_cfl_four_level;
    });

    run(4, [](std::string& what) {
        SpaceGrid sg(1, 100);
        auto rho = initial_density("gaussian_1d", sg);
        auto a = select_zero_one_stable(CollisionModel::density(1e-5), rho, 6, 0.4, sg.dx, OuterMethod::PFE);
        auto b = select_zero_one_stable(CollisionModel::density(1e-6), rho, 3, 0.4, sg.dx, OuterMethod::PFE);
        const double table[] = {2.0, 3.0, 6.66, 8.32, 12.21, 14.24, 18.21, 20.48, 24.48, 26.91};
        bool tab = true;
        for (int K = 1; K <= 10; ++K) tab = tab && table1_max_M(K) == table[K - 1];
        what = "[0,1]-stable: M=" + list(a.M) + " and M=" + list(b.M) + (tab ? ", table exact" : ", table mismatch");
        return a.levels() == 2 && close_all(a.M, {14.24, 11.79}, tol_M_zero_one) && b.levels() == 4 &&
               close_all(b.M, {6.66, 6.26, 2.06, 2.03}, tol_M_zero_one) && tab;
    });

    run(5, [](std::string& what) {
        auto r = profile_report({1.0, 0.2, 0.01, 0.002}, 1e-6);
        what = "R_f=" + std::to_string(r.fast_radius) + ", eigenvalues outside disks: " +
               std::to_string(r.outside.size()) + " of " + std::to_string(r.eigenvalues.size());
        return std::abs(r.fast_radius - 971.89) <= tol_Rf && r.outside.empty();
    });

    run(6, [](std::string& what) {
        auto vg = gauss_hermite_1d(10);
        const double dx = 0.01;
        double lo = INFINITY, hi = 0.0;
        for (int i : {1, 3, 10, 25, 50}) {
            double zeta = 2.0 * 3.141592653589793 * i * dx;
            std::vector<double> err;
            for (double eps : {1e-4, 5e-5, 2.5e-5, 1.25e-5}) {
                auto ev = eig_dense(build_symbol(1.0, eps, zeta, up1, vg, dx).B);
                cplx top = *std::max_element(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
                err.push_back(std::abs(top - dominant_expansion(1.0, eps, {zeta, 0.0}, up1, vg, dx)));
            }
            for (int k = 0; k < 3; ++k) {
                lo = std::min(lo, err[k] / err[k + 1]);
                hi = std::max(hi, err[k] / err[k + 1]);
            }
        }
        what = "expansion error reduction per eps halving in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
        return lo >= ratio_lo && hi <= ratio_hi;
    });

    run(7, [](std::string& what) {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double h0 = 1e-5;
        std::vector<cplx> s0(1000), lam(1000);
        for (int i = 0; i < 1000; ++i) {
            s0[i] = std::polar(std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
            lam[i] = (s0[i] - 1.0) / h0;
        }
        RotationBlocks op(lam);
        double worst = 0.0;
        for (auto m : {OuterMethod::PFE, OuterMethod::PRK2, OuterMethod::PRK4}) {
            TpiSchedule s;
            s.h0 = h0;
            s.M = {9.0, 75.82};
            s.K = {1, 2};
            s.outer = m;
            std::vector<double> y(2000, 0.0);
            for (int i = 0; i < 1000; ++i) y[2 * i] = 1.0;
            TpiIntegrator(op, s).outer_step(y);
            for (int i = 0; i < 1000; ++i) {
                cplx want = amplification(s, s0[i]);
                worst = std::max(worst, std::abs(cplx(y[2 * i], y[2 * i + 1]) - want) / std::max(1.0, std::abs(want)));
            }
        }
        what = "integrator vs amplification map, worst relative deviation " + fmt17(worst);
        return worst <= tol_scalar;
    });

    run(8, [](std::string& what) {
        std::ostringstream os, failed;
        double l1_up1 = 0, l1_weno3 = 0;
        auto need = [&](bool cond, const std::string& label) {
            if (!cond) failed << " [" << label << "]";
        };
        for (auto name : {"upwind1", "upwind2", "upwind3", "weno2", "weno3"}) {
            auto r = run_experiment(benchmark_1d(name));
            const std::string n = name;
            need(r.schedule.levels() == 2 && close_all(r.schedule.M, {12.21, 7.73}, tol_M_clustered), n + " schedule");
            // The maximum principle bounds every step; the overshoot pattern is
            // read off the profile at t_end.
            const double final_max = *std::max_element(r.rho_final.begin(), r.rho_final.end());
            if (n == "upwind1") {
                l1_up1 = r.errors.L1;
                need(r.errors.min_rho >= -tol_max_principle, "upwind1 min < 0");
                need(r.errors.max_rho <= 1.0 + tol_max_principle, "upwind1 max > max rho0");
            }
            if (n == "weno3") l1_weno3 = r.errors.L1;
            if (n == "upwind2" || n == "upwind3") need(final_max > overshoot_upwind, n + " no overshoot");
            if (n == "weno2" || n == "weno3") need(final_max <= overshoot_weno, n + " overshoot");
            os << n << "(L1=" << r.errors.L1 << ", run range [" << r.errors.min_rho << ", " << r.errors.max_rho
               << "], final max " << final_max << ") ";
        }
        need(l1_weno3 < l1_up1, "weno3 not more accurate than upwind1");
        what = "1D step profile: " + os.str() + (failed.str().empty() ? "" : "failed:" + failed.str());
        return failed.str().empty();
    });

    run(9, [](std::string& what) {
        ExperimentConfig c;
        c.dim = 2;
        c.eps = 1e-5;
        c.collision = CollisionModel::density(c.eps);
        c.cells = 50;
        c.J = 10;
        c.scheme = up1;
        c.t_end = 1.0;
        c.initial = "gaussian_2d";
        c.K = 3;
        c.C = 0.5;
        c.outer = OuterMethod::PRK4;
        auto r = run_experiment(c);
        SpaceGrid sg(2, 50);
        auto peak = std::max_element(r.rho_final.begin(), r.rho_final.end()) - r.rho_final.begin();
        auto x = sg.center(peak);
        bool at_centre = std::abs(x[0] - 0.5) <= sg.dx && std::abs(x[1] - 0.5) <= sg.dx;
        std::ostringstream os;
        os << "2D Gaussian: M=" << list(r.schedule.M) << " peak at (" << x[0] << ", " << x[1]
           << ") mass drift " << r.errors.mass_drift << " range [" << r.errors.min_rho << ", " << r.errors.max_rho
           << "]";
        what = os.str();
        bool bounded = std::isfinite(r.errors.max_rho) && r.errors.max_rho <= 1.0 + 1e-3 && r.errors.min_rho >= -1e-3;
        return bounded && r.schedule.levels() == 3 && close_all(r.schedule.M, {6.66, 6.66, 4.81}, tol_M_clustered) && at_centre &&
               r.errors.mass_drift <= tol_mass_2d;
    });

    run(10, [](std::string& what) {
        auto a = clustered({1.0, 0.1}, 1e-5), b = clustered({1.0, 0.1}, 1e-6);
        double shift = std::abs(a.M[0] - b.M[0]) / a.M[0];
        std::vector<double> outer;
        for (double eps : {1e-5, 1e-6, 1e-7}) outer.push_back(clustered({1.0, 0.1}, eps).M.back());
        double r1 = outer[1] / outer[0] / 10.0, r2 = outer[2] / outer[1] / 10.0;
        std::vector<int> L;
        std::vector<double> rho(100, 1.0);
        for (double eps : {1e-4, 1e-6, 1e-8})
            L.push_back(select_zero_one_stable(CollisionModel::density(eps), rho, 5, 0.5, 0.01, OuterMethod::PFE).levels());
        std::ostringstream os;
        os << "inner M shift " << shift << ", outer M ratios/10 " << r1 << ", " << r2 << ", L=" << list(L);
        what = os.str();
        return shift < tol_inner_shift && std::abs(r1 - 1.0) <= tol_outer_scaling &&
               std::abs(r2 - 1.0) <= tol_outer_scaling && L[0] <= L[1] && L[1] <= L[2] && L[1] - L[0] <= 2 &&
               L[2] - L[1] <= 2 && L[2] > L[0];
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
