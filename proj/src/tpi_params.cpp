#include "tpi/tpi_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "tpi/errors.hpp"
#include "tpi/output.hpp"

namespace tpi {

std::vector<double> TpiSchedule::steps() const {
    std::vector<double> h{h0};
    for (int l = 0; l < levels(); ++l) h.push_back((M[l] + K[l] + 1.0) * h.back());
    return h;
}

void TpiSchedule::validate_structure() const {
    if (!(h0 > 0.0)) throw ScheduleError("schedule: h0 must be positive");
    if (M.empty()) throw ScheduleError("schedule: need at least one level");
    if (K.size() != M.size()) throw ScheduleError("schedule: K and M sizes differ");
    for (int l = 0; l < levels(); ++l) {
        if (K[l] < 0) throw ScheduleError("schedule: K must be nonnegative");
        if (!(M[l] >= 0.0)) throw ScheduleError("schedule: M must be nonnegative");
    }
}

void TpiSchedule::validate() const {
    validate_structure();
    for (int l = 0; l < levels(); ++l)
        if (!(M[l] >= 1.0)) throw ScheduleError("schedule: M must be >= 1 (level " + std::to_string(l) + ")");
}

std::vector<StabilityRegion> stability_regions(const TpiSchedule& s) {
    std::vector<StabilityRegion> out;
    for (int l = 0; l < s.levels(); ++l) {
        double inv = 1.0 / s.M[l];
        out.push_back({s.K[l] > 0 ? std::pow(inv, 1.0 / s.K[l]) : 0.0, 1.0 - inv, inv});
    }
    return out;
}

cplx level_map(cplx s, double M, int K) {
    cplx p = 1.0;
    for (int k = 0; k < K; ++k) p *= s;
    return ((M + 1.0) * s - M) * p;
}

cplx outer_map(cplx q, double M, int K, OuterMethod method) {
    if (method == OuterMethod::PFE) return level_map(q, M, K);
    const ButcherTableau t = tableau_for(method);
    cplx qK = 1.0;
    for (int k = 0; k < K; ++k) qK *= q;
    const cplx q1 = qK * q;
    const cplx g = qK * (q - 1.0);  // h k_s / seed
    std::vector<cplx> Z(t.stages());
    Z[0] = 1.0;
    for (int s = 1; s < t.stages(); ++s) {
        cplx acc = 0.0;
        for (int m = 0; m < s; ++m) acc += (t.a[s][m] / t.c[s]) * g * Z[m];
        Z[s] = q1 + (t.c[s] * (M + K + 1.0) - (K + 1.0)) * acc;
    }
    cplx acc = 0.0;
    for (int s = 0; s < t.stages(); ++s) acc += t.b[s] * Z[s];
    return q1 + M * g * acc;
}

cplx amplification(const TpiSchedule& s, cplx sigma0) {
    cplx q = sigma0;
    const int L = s.levels();
    for (int l = 0; l + 1 < L; ++l) q = level_map(q, s.M[l], s.K[l]);
    return outer_map(q, s.M[L - 1], s.K[L - 1], s.outer);
}

double table1_max_M(int K) {
    static const double table[] = {2.0, 3.0, 6.66, 8.32, 12.21, 14.24, 18.21, 20.48, 24.48, 26.91};
    if (K < 1 || K > 10) throw ScheduleError("K = " + std::to_string(K) + " outside the tabulated range 1..10");
    return table[K - 1];
}

namespace {

// Largest M for which -2 Re(d)/|d|^2 >= M, i.e. the mapped point lies in
// D(1 - 1/M, 1/M); d = sigma - 1.
double enclosing_M(cplx sigma, bool& infeasible) {
    cplx d = sigma - 1.0;
    double n2 = std::norm(d);
    if (n2 < 1e-28) return INFINITY;
    if (d.real() >= 0.0) {
        infeasible = true;
        return 0.0;
    }
    return -2.0 * d.real() / n2;
}

int formula_K(double M, double sigma_hat) {
    if (!(sigma_hat < 1.0)) throw ScheduleError("already damped clusters are not inside the unit disk");
    if (sigma_hat <= 0.0) return 1;
    return std::max(1, static_cast<int>(std::ceil(std::log(1.0 / M) / std::log(sigma_hat))));
}

// Smallest K >= 1 with |level_map(p)| <= |p| for every point.
int contraction_K(const std::vector<cplx>& pts, double M) {
    if (pts.empty()) return 1;
    for (int K = 1; K <= 64; ++K) {
        bool ok = true;
        for (const cplx& p : pts)
            if (std::abs(level_map(p, M, K)) > std::abs(p) * (1.0 + 1e-14)) {
                ok = false;
                break;
            }
        if (ok) return K;
    }
    throw ScheduleError("merged clusters cannot be contracted by the next level");
}

}  // namespace

TpiSchedule select_clustered(const SpectrumReport& report, const SelectionOptions& opts) {
    if (report.disks.empty()) throw ScheduleError("empty spectrum report");
    const double eps = report.eps;
    const double Rf = report.fast_radius;

    std::vector<int> fast, slow;
    for (std::size_t l = 0; l < report.disks.size(); ++l) {
        double c = std::abs(report.disks[l].center);
        (c - Rf > report.slow_radius ? fast : slow).push_back(static_cast<int>(l));
    }
    if (fast.empty()) throw ScheduleError("no fast eigenvalue cluster separated from the dominant eigenvalues");
    std::sort(fast.begin(), fast.end(), [&](int a, int b) { return report.disks[a].omega > report.disks[b].omega; });

    TpiSchedule s;
    s.outer = opts.outer;
    s.dx = report.dx;
    s.h0 = eps / report.disks[fast[0]].omega;

    // Track boundary points and centres of every fast disk through the sigma planes.
    const int nb = std::max(8, opts.boundary_points);
    std::vector<std::vector<cplx>> pts(fast.size());
    std::vector<cplx> centers(fast.size());
    for (std::size_t f = 0; f < fast.size(); ++f) {
        const LevelDisk& d = report.disks[fast[f]];
        centers[f] = 1.0 + s.h0 * d.center;
        for (int k = 0; k < nb; ++k) {
            double th = 2.0 * std::numbers::pi * k / nb;
            pts[f].push_back(1.0 + s.h0 * (d.center + Rf * std::polar(1.0, th)));
        }
    }
    auto apply = [&](double M, int K) {
        for (auto& v : pts)
            for (auto& p : v) p = level_map(p, M, K);
        for (auto& c : centers) c = level_map(c, M, K);
    };
    auto points_of = [&](const std::vector<std::size_t>& ids) {
        std::vector<cplx> out;
        for (auto f : ids) out.insert(out.end(), pts[f].begin(), pts[f].end());
        return out;
    };
    auto max_modulus = [](const std::vector<cplx>& v) {
        double m = 0.0;
        for (const cplx& p : v) m = std::max(m, std::abs(p));
        return m;
    };

    std::vector<std::size_t> damped{0}, skipped;
    std::size_t ever_skipped = 0;
    for (std::size_t f = 1; f < fast.size(); ++f) {
        cplx sig = centers[f];
        double M = sig.real() / (1.0 - sig.real());
        if (std::abs(sig.imag()) > 0.1 * std::abs(sig.real()))
            s.warnings.push_back("cluster centre has imaginary part above 10% of its real part at level " +
                                 std::to_string(s.levels()));
        if (M < opts.M_min) {
            damped.push_back(f);
            skipped.push_back(f);
            ++ever_skipped;
            continue;
        }
        int K = std::max(formula_K(M, max_modulus(points_of(damped))), contraction_K(points_of(skipped), M));
        s.M.push_back(M);
        s.K.push_back(K);
        apply(M, K);
        damped.push_back(f);
        skipped.clear();
    }
    if (s.M.empty() && ever_skipped > 0)
        s.warnings.push_back("no spectral gap above M_min: schedule degenerates to L=1");

    // Outermost level: enclose the dominant eigenvalues and the extra slow clusters.
    TpiSchedule inner = s;
    auto propagate = [&](cplx lambda) {
        cplx q = 1.0 + s.h0 * lambda;
        for (int l = 0; l < inner.levels(); ++l) q = level_map(q, inner.M[l], inner.K[l]);
        return q;
    };
    bool infeasible = false;
    double M_out = INFINITY;
    const double tiny = 1e-12 * std::max(1.0, report.slow_radius);
    for (const cplx& lam : report.dominant_lead) {
        if (std::abs(lam) <= tiny) continue;
        M_out = std::min(M_out, enclosing_M(propagate(lam), infeasible));
    }
    for (int l : slow)
        for (const cplx& lam : report.level_eigenvalues(l, true)) {
            if (std::abs(lam) <= tiny) continue;
            M_out = std::min(M_out, enclosing_M(propagate(lam), infeasible));
        }
    if (infeasible || !(M_out >= 1.0) || !std::isfinite(M_out))
        throw ScheduleError("dominant eigenvalues cannot be enclosed by the outermost level (M = " +
                            fmt17(infeasible ? 0.0 : M_out) + ")");
    std::vector<std::size_t> all(fast.size());
    for (std::size_t f = 0; f < fast.size(); ++f) all[f] = f;
    int K_out = std::max(formula_K(M_out, max_modulus(points_of(all))), contraction_K(points_of(skipped), M_out));
    s.M.push_back(M_out);
    s.K.push_back(K_out);
    s.validate();
    return s;
}

TpiSchedule select_zero_one_stable(const CollisionModel& model, const std::vector<double>& rho0, int K,
                                   double C, double dx, OuterMethod outer) {
    model.validate();
    if (!(C > 0.0) || !(dx > 0.0)) throw ScheduleError("CFL target and dx must be positive");
    double nu_max = 0.0;
    if (model.kind == CollisionKind::density) {
        for (double r : rho0) nu_max = std::max(nu_max, r);
    } else {
        nu_max = model.frequency_levels().front();
    }
    if (!(nu_max > 0.0)) throw ScheduleError("maximum collision frequency must be positive");

    TpiSchedule s;
    s.outer = outer;
    s.dx = dx;
    s.h0 = model.eps / nu_max;
    const double Mt = table1_max_M(K);
    const double hL = C * dx;
    if (hL < (K + 2.0) * s.h0)
        throw ScheduleError("outer step " + fmt17(hL) + " is too small for K = " + std::to_string(K) +
                            " and h0 = " + fmt17(s.h0));
    int L = static_cast<int>(std::ceil((std::log(hL) + std::log(1.0 / s.h0)) / std::log(Mt + K + 1.0)));
    L = std::max(L, 1);
    s.M.assign(L, Mt);
    s.K.assign(L, K);
    auto fix_outer = [&] {
        double h = s.h0;
        for (int l = 0; l + 1 < L; ++l) h *= s.M[l] + K + 1.0;
        s.M[L - 1] = hL / h - K - 1.0;
    };
    // Lower levels give up extrapolation distance, outermost first, in steps
    // of 0.1 and never below `floor`, until the outer level has M >= floor.
    auto shrink = [&](double floor) {
        for (int j = L - 2; j >= 0 && s.M[L - 1] < floor; --j) {
            while (s.M[L - 1] < floor && s.M[j] - 0.1 >= floor - 1e-9) {
                s.M[j] = std::round((s.M[j] - 0.1) * 100.0) / 100.0;
                fix_outer();
            }
        }
    };
    fix_outer();
    if (s.M[L - 1] < 1.0) {
        shrink(2.0);
        // Short outer steps: the inner levels may go down to M = 1. Fewer
        // levels cannot help, since L is the smallest count reaching h_L.
        if (s.M[L - 1] < 1.0) shrink(1.0);
        if (s.M[L - 1] < 1.0)
            throw ScheduleError("no [0,1]-stable cascade with K = " + std::to_string(K) + " reaches outer step " +
                                fmt17(hL) + " from h0 = " + fmt17(s.h0));
        s.warnings.push_back("lower-level M reduced to keep the outer step fixed");
    }
    s.validate();
    return s;
}

StabilityCheck verify_stability(const TpiSchedule& s, const std::vector<cplx>& lambdas) {
    StabilityCheck out;
    for (const cplx& lam : lambdas) {
        double a = std::abs(amplification(s, 1.0 + s.h0 * lam));
        out.max_modulus = std::max(out.max_modulus, a);
        if (a > 1.0 + 1e-9) out.violations.push_back(lam);
    }
    out.stable = out.violations.empty();
    return out;
}

StabilityCheck verify_stability(const TpiSchedule& s, const SpectrumReport& report) {
    std::vector<cplx> l;
    l.reserve(report.eigenvalues.size());
    for (const auto& e : report.eigenvalues) l.push_back(e.lambda);
    return verify_stability(s, l);
}

std::string schedule_json(const TpiSchedule& s) {
    auto list = [](const auto& v) {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << ", ";
            if constexpr (std::is_same_v<std::decay_t<decltype(v[0])>, int>)
                os << v[i];
            else
                os << fmt17(v[i]);
        }
        os << ']';
        return os.str();
    };
    std::ostringstream os;
    os << "{\n"
       << "  \"L\": " << s.levels() << ",\n"
       << "  \"h0\": " << fmt17(s.h0) << ",\n"
       << "  \"K\": " << list(s.K) << ",\n"
       << "  \"M\": " << list(s.M) << ",\n"
       << "  \"h\": " << list(s.steps()) << ",\n"
       << "  \"dx\": " << fmt17(s.dx) << ",\n"
       << "  \"CFL\": " << fmt17(s.cfl()) << ",\n"
       << "  \"outer\": \"" << to_string(s.outer) << "\"\n"
       << "}\n";
    return os.str();
}

TpiSchedule schedule_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("schedule file: ") + e.what());
    }
    TpiSchedule s;
    try {
        s.h0 = j.at("h0").get<double>();
        s.K = j.at("K").get<std::vector<int>>();
        s.M = j.at("M").get<std::vector<double>>();
        s.outer = parse_outer_method(j.value("outer", std::string("PFE")));
        s.dx = j.value("dx", 0.0);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("schedule file: ") + e.what());
    }
    s.validate();
    return s;
}

}  // namespace tpi
