#include "tpi/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "tpi/maxwellian.hpp"
#include "tpi/output.hpp"

namespace tpi {

ComplexMatrix SymbolMatrix::M() const {
    ComplexMatrix m(shape.size());
    for (std::size_t j = 0; j < shape.size(); ++j) m(j, j) = shape[j];
    return m;
}

ComplexMatrix SymbolMatrix::P() const {
    ComplexMatrix p(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (std::size_t j = 0; j < weights.size(); ++j) p(i, j) = weights[j];
    return p;
}

namespace {

std::vector<cplx> node_symbols(std::array<double, 2> zeta, SchemeId scheme, const VelocityGrid& vg, double dx) {
    std::vector<cplx> D(vg.size());
    for (std::size_t j = 0; j < vg.size(); ++j)
        D[j] = vg.dim == 1 ? fourier_symbol(scheme, vg.nodes[j][0], zeta[0], dx)
                           : fourier_symbol_2d(scheme, vg.nodes[j], zeta[0], zeta[1], dx);
    return D;
}

}  // namespace

SymbolMatrix build_symbol(double omega_bar, double eps, std::array<double, 2> zeta, SchemeId scheme,
                          const VelocityGrid& vg, double dx) {
    if (!scheme.linear()) throw std::invalid_argument("build_symbol: nonlinear scheme " + scheme.name());
    SymbolMatrix s;
    s.omega_bar = omega_bar;
    s.eps = eps;
    s.shape = equilibrium_shape(vg);
    s.weights = vg.weights;
    s.D = node_symbols(zeta, scheme, vg, dx);
    const std::size_t J = vg.size();
    s.B = ComplexMatrix(J);
    const double r = omega_bar / eps;
    for (std::size_t i = 0; i < J; ++i) {
        for (std::size_t j = 0; j < J; ++j) s.B(i, j) = r * s.shape[i] * s.weights[j];
        s.B(i, i) += -r + s.D[i];
    }
    return s;
}

cplx dominant_leading(std::array<double, 2> zeta, SchemeId scheme, const VelocityGrid& vg, double dx) {
    const auto D = node_symbols(zeta, scheme, vg, dx);
    const auto s = equilibrium_shape(vg);
    cplx m1 = 0.0;
    for (std::size_t j = 0; j < vg.size(); ++j) m1 += vg.weights[j] * D[j] * s[j];
    return m1;
}

cplx dominant_expansion(double omega_bar, double eps, std::array<double, 2> zeta, SchemeId scheme,
                        const VelocityGrid& vg, double dx) {
    const auto D = node_symbols(zeta, scheme, vg, dx);
    const auto s = equilibrium_shape(vg);
    cplx m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < vg.size(); ++j) {
        m1 += vg.weights[j] * D[j] * s[j];
        m2 += vg.weights[j] * D[j] * D[j] * s[j];
    }
    return m1 + (eps / omega_bar) * (m2 - m1 * m1);
}

cplx dominant_expansion_first_order_imag(double omega_bar, double eps, double zeta, SchemeId scheme,
                                         const VelocityGrid& vg, double dx) {
    double a = 0, a2 = 0, b2 = 0, bv = 0;
    for (std::size_t j = 0; j < vg.size(); ++j) {
        cplx d = fourier_symbol(scheme, vg.nodes[j][0], zeta, dx);
        double w = vg.weights[j];
        a += w * d.real();
        a2 += w * d.real() * d.real();
        b2 += w * d.imag() * d.imag();
        bv += w * d.imag() * vg.nodes[j][0];
    }
    return {a + (a2 - a * a - b2 + bv * bv) * eps / omega_bar, bv};
}

std::size_t SpectrumReport::fast_cluster_count() const {
    return std::count_if(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.fast; });
}

std::vector<cplx> SpectrumReport::level_eigenvalues(int level, bool include_dominant) const {
    std::vector<cplx> out;
    for (const auto& e : eigenvalues)
        if (e.level == level && (include_dominant || !e.dominant)) out.push_back(e.lambda);
    return out;
}

std::vector<Cluster> cluster(std::vector<Eigenpoint>& eigs, const ClusterOptions& opts) {
    std::vector<Cluster> out;
    if (eigs.empty()) return out;
    std::vector<std::size_t> idx(eigs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return eigs[a].lambda.real() < eigs[b].lambda.real(); });

    // Raw groups of consecutive sorted indices.
    std::vector<std::vector<std::size_t>> groups(1);
    groups[0].push_back(idx[0]);
    for (std::size_t k = 1; k < idx.size(); ++k) {
        double a = eigs[idx[k - 1]].lambda.real(), b = eigs[idx[k]].lambda.real();
        double tol = std::max(opts.rel_gap * std::max(std::abs(a), std::abs(b)), opts.slow_radius);
        if (b - a > tol) groups.emplace_back();
        groups.back().push_back(idx[k]);
    }

    auto center_of = [&](const std::vector<std::size_t>& g) {
        double lo = eigs[g.front()].lambda.real(), hi = lo;
        for (auto i : g) {
            lo = std::min(lo, eigs[i].lambda.real());
            hi = std::max(hi, eigs[i].lambda.real());
        }
        return 0.5 * (lo + hi);
    };

    // Merge fast groups whose projective factor relative to the anchor is below M_min.
    std::vector<std::vector<std::size_t>> merged;
    double anchor = 0.0;
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        double c = center_of(groups[g]);
        if (!merged.empty()) {
            double M = std::abs(anchor) / std::abs(c) - 1.0;
            if (M < opts.M_min) {
                merged.back().insert(merged.back().end(), groups[g].begin(), groups[g].end());
                continue;
            }
        }
        merged.push_back(groups[g]);
        anchor = c;
    }
    merged.push_back(groups.back());

    for (std::size_t g = 0; g < merged.size(); ++g) {
        Cluster cl;
        cl.fast = g + 1 < merged.size();
        cl.count = merged[g].size();
        cl.re_min = cl.re_max = eigs[merged[g].front()].lambda.real();
        for (auto i : merged[g]) {
            cl.re_min = std::min(cl.re_min, eigs[i].lambda.real());
            cl.re_max = std::max(cl.re_max, eigs[i].lambda.real());
        }
        cl.center = 0.5 * (cl.re_min + cl.re_max);
        for (auto i : merged[g]) {
            cl.radius = std::max(cl.radius, std::abs(eigs[i].lambda - cl.center));
            eigs[i].cluster = static_cast<int>(g);
            if (!eigs[i].dominant &&
                std::find(cl.levels.begin(), cl.levels.end(), eigs[i].level) == cl.levels.end())
                cl.levels.push_back(eigs[i].level);
        }
        std::sort(cl.levels.begin(), cl.levels.end());
        out.push_back(std::move(cl));
    }
    return out;
}

namespace {

std::vector<std::array<double, 2>> mode_list(const SpaceGrid& sg) {
    std::vector<std::array<double, 2>> modes;
    const double two_pi_dx = 2.0 * std::numbers::pi * sg.dx;
    if (sg.dim == 1) {
        for (int i = 1; i <= sg.I; ++i) modes.push_back({two_pi_dx * i, 0.0});
    } else {
        for (int iy = 1; iy <= sg.I; ++iy)
            for (int ix = 1; ix <= sg.I; ++ix) modes.push_back({two_pi_dx * ix, two_pi_dx * iy});
    }
    return modes;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

SpectrumReport full_spectrum(const CollisionModel& model, SchemeId scheme, const SpaceGrid& sg,
                             const VelocityGrid& vg, const std::vector<double>* rho0,
                             const ClusterOptions& opts, int threads) {
    model.validate();
    SpectrumReport r;
    r.eps = model.eps;
    r.dx = sg.dx;
    r.dim = sg.dim;
    r.I = sg.I;

    std::vector<double> levels;
    double reference;
    if (model.kind == CollisionKind::density) {
        if (!rho0 || rho0->size() != sg.cells())
            throw std::invalid_argument("full_spectrum: density model needs rho0 on the grid");
        for (double x : *rho0)
            if (x >= 0.0) levels.push_back(x);
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end(),
                                 [](double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(1.0, a); }),
                     levels.end());
        reference = std::accumulate(rho0->begin(), rho0->end(), 0.0) / rho0->size();
        r.continuous = true;
    } else {
        levels = model.frequency_levels();
        reference = levels.front();
    }

    const auto modes = mode_list(sg);
    for (double w : levels) r.disks.push_back({w, cplx(-w / model.eps, 0.0), 0.0});

    const std::size_t nm = modes.size(), nl = levels.size();
    std::vector<std::vector<cplx>> blocks(nm * nl);
    std::vector<cplx> dom(nm), lead(nm);
    std::vector<double> rf(nm, 0.0);
    parallel_for(nm, threads, [&](std::size_t m) {
        for (std::size_t l = 0; l < nl; ++l)
            blocks[m * nl + l] = eig_dense(build_symbol(levels[l], model.eps, modes[m], scheme, vg, sg.dx).B);
        SymbolMatrix ref = build_symbol(reference, model.eps, modes[m], scheme, vg, sg.dx);
        for (const cplx& d : ref.D) rf[m] = std::max(rf[m], std::abs(d));
        auto ev = eig_dense(ref.B);
        dom[m] = *std::max_element(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
        lead[m] = dominant_leading(modes[m], scheme, vg, sg.dx);
    });

    r.fast_radius = *std::max_element(rf.begin(), rf.end());
    for (auto& d : r.disks) d.radius = r.fast_radius;
    r.dominant = dom;
    r.dominant_lead = lead;
    for (const cplx& d : dom) r.slow_radius = std::max(r.slow_radius, std::abs(d));

    double scale = 1.0;
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t l = 0; l < nl; ++l) {
            const auto& ev = blocks[m * nl + l];
            std::size_t top = 0;
            for (std::size_t k = 1; k < ev.size(); ++k)
                if (ev[k].real() > ev[top].real()) top = k;
            for (std::size_t k = 0; k < ev.size(); ++k) {
                Eigenpoint e;
                e.lambda = ev[k];
                e.mode = static_cast<int>(m) + 1;
                e.level = static_cast<int>(l);
                e.dominant = k == top;
                r.eigenvalues.push_back(e);
                scale = std::max(scale, std::abs(ev[k]));
            }
        }

    for (const auto& e : r.eigenvalues) {
        if (e.lambda.real() > 1e-8 * scale) r.rhp.push_back(e.lambda);
        if (e.dominant) continue;
        const LevelDisk& d = r.disks[e.level];
        double tol = 1e-6 * std::max(std::abs(d.center), d.radius);
        if (std::abs(e.lambda - d.center) > d.radius + tol) r.outside.push_back(e.lambda);
    }

    ClusterOptions co = opts;
    if (co.slow_radius <= 0.0) co.slow_radius = r.slow_radius;
    r.clusters = cluster(r.eigenvalues, co);
    for (std::size_t k = 0; k + 1 < r.clusters.size(); ++k) {
        double b = std::abs(r.clusters[k + 1].center);
        r.gap_ratios.push_back(b > 0.0 ? std::abs(r.clusters[k].center) / b : INFINITY);
    }
    for (const auto& d : r.disks)
        if (std::abs(d.center) - d.radius <= r.slow_radius) ++r.extra_slow_levels;
    return r;
}

std::vector<cplx> coupled_spectrum(const CollisionModel& model, SchemeId scheme, const SpaceGrid& sg,
                                   const VelocityGrid& vg, const std::vector<double>* rho0) {
    if (!scheme.linear()) throw std::invalid_argument("coupled_spectrum: nonlinear scheme " + scheme.name());
    const std::size_t n = sg.cells() * vg.size();
    if (n > 4000) throw std::invalid_argument("coupled_spectrum: I*J must be <= 4000");
    BgkSystem sys(sg, vg, model, scheme);
    if (model.kind == CollisionKind::density) {
        if (!rho0) throw std::invalid_argument("coupled_spectrum: density model needs rho0");
        sys.freeze_frequency(*rho0);
    }
    ComplexMatrix A(n);
    std::vector<double> e(n, 0.0), col(n);
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = 1.0;
        sys.eval(e.data(), col.data());
        for (std::size_t i = 0; i < n; ++i) A(i, k) = col[i];
        e[k] = 0.0;
    }
    return eig_dense(std::move(A));
}

void write_spectrum_csv(std::ostream& os, const SpectrumReport& r) {
    os << "mode_index,re_lambda,im_lambda,cluster_id\n";
    for (const auto& e : r.eigenvalues)
        os << e.mode << ',' << fmt17(e.lambda.real()) << ',' << fmt17(e.lambda.imag()) << ',' << e.cluster << '\n';
}

}  // namespace tpi
