// Command-line front end: spectrum, plan, run, verify, sweep.
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tpi/config.hpp"
#include "tpi/errors.hpp"
#include "tpi/experiments.hpp"
#include "tpi/output.hpp"
#include "tpi/quadrature.hpp"
#include "tpi/spectrum.hpp"
#include "tpi/tpi_params.hpp"

namespace fs = std::filesystem;
using namespace tpi;

namespace {

enum Exit { ok = 0, other_error = 1, config_error = 2, schedule_error = 3, blowup_error = 4 };

struct Options {
    std::string config;
    std::string out;
    std::string schedule_file;
    int threads = 1;
    bool verbose = false;
};

// Minimal JSON text builder so numbers keep 17 significant digits.
std::string jstr(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\', o += c;
        else if (c == '\n') o += "\\n";
        else if (static_cast<unsigned char>(c) < 0x20) o += ' ';
        else o += c;
    }
    return o + "\"";
}
std::string jnum(double x) { return std::isfinite(x) ? fmt17(x) : "null"; }

fs::path output_dir(const Options& o, const std::string& cmd) {
    if (!o.out.empty()) return o.out;
    if (const char* root = std::getenv("TPI_OUTPUT_ROOT")) return fs::path(root) / cmd;
    return fs::path("tpi_out") / cmd;
}

ExperimentConfig load_experiment(const Options& o, KeyValueConfig& kv) {
    if (o.config.empty()) throw ConfigError("--config is required");
    kv = KeyValueConfig::load(o.config);
    return ExperimentConfig::from_config(kv);
}

SpectrumReport spectrum_for(const ExperimentConfig& cfg, int threads, std::vector<double>& rho0) {
    SpaceGrid sg(cfg.dim, cfg.cells);
    VelocityGrid vg = cfg.dim == 1 ? gauss_hermite_1d(cfg.J) : gauss_hermite_2d(cfg.J);
    SchemeId proxy{SchemeFamily::upwind, std::min(cfg.scheme.order, 3)};
    rho0 = initial_density(cfg.initial, sg, cfg.initial_table);
    ClusterOptions co;
    co.M_min = cfg.M_min;
    return full_spectrum(cfg.collision, proxy, sg, vg, &rho0, co, threads);
}

int cmd_spectrum(const Options& o) {
    KeyValueConfig kv;
    ExperimentConfig cfg = load_experiment(o, kv);
    std::vector<double> rho0;
    SpectrumReport r = spectrum_for(cfg, o.threads, rho0);
    fs::path dir = output_dir(o, "spectrum");
    std::ostringstream csv;
    write_spectrum_csv(csv, r);
    write_file_atomic(dir / "spectrum.csv", csv.str());
    std::ostringstream cl;
    cl << "cluster_id,re_center,im_center,radius,count,kind\n";
    for (std::size_t k = 0; k < r.clusters.size(); ++k) {
        const auto& c = r.clusters[k];
        cl << k << ',' << fmt17(c.center.real()) << ',' << fmt17(c.center.imag()) << ',' << fmt17(c.radius) << ','
           << c.count << ',' << (c.fast ? "fast" : "slow") << '\n';
    }
    write_file_atomic(dir / "clusters.csv", cl.str());

    std::ostringstream s;
    s << "R_f = " << fmt17(r.fast_radius) << "\n";
    s << "levels = " << r.disks.size() << "\n";
    s << "fast clusters = " << r.fast_cluster_count() << "\n";
    s << "slow clusters = " << r.clusters.size() - r.fast_cluster_count() << "\n";
    s << "extra slow levels = " << r.extra_slow_levels << "\n";
    s << "classification = " << (r.continuous ? "continuous" : "clustered") << "\n";
    s << "dominant scale = " << fmt17(r.slow_radius) << "\n";
    s << "containment violations = " << r.outside.size() << "\n";
    s << "right half-plane eigenvalues = " << r.rhp.size() << "\n";
    for (std::size_t k = 0; k < r.gap_ratios.size(); ++k)
        s << "gap ratio " << k << " = " << fmt17(r.gap_ratios[k]) << "\n";
    write_file_atomic(dir / "summary.txt", s.str());
    std::cout << s.str();
    return ok;
}

int cmd_plan(const Options& o) {
    KeyValueConfig kv;
    ExperimentConfig cfg = load_experiment(o, kv);
    TpiSchedule s = build_schedule(cfg, o.threads);
    std::string js = schedule_json(s);
    std::cout << js;
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
    if (!o.out.empty()) write_file_atomic(fs::path(o.out) / "schedule.json", js);
    return ok;
}

int cmd_verify(const Options& o) {
    KeyValueConfig kv;
    ExperimentConfig cfg = load_experiment(o, kv);
    TpiSchedule s;
    if (!o.schedule_file.empty()) {
        std::ifstream in(o.schedule_file);
        if (!in) throw ConfigError(o.schedule_file + ": cannot open schedule file");
        std::stringstream ss;
        ss << in.rdbuf();
        s = schedule_from_json(ss.str());
    } else {
        s = build_schedule(cfg, o.threads);
    }
    std::vector<double> rho0;
    SpectrumReport r = spectrum_for(cfg, o.threads, rho0);
    StabilityCheck chk = verify_stability(s, r);
    std::cout << "eigenvalues = " << r.eigenvalues.size() << "\n"
              << "max |sigma_L| = " << fmt17(chk.max_modulus) << "\n"
              << "violations = " << chk.violations.size() << "\n"
              << (chk.stable ? "stable" : "unstable") << "\n";
    if (o.verbose)
        for (const auto& v : chk.violations) std::cout << "  " << fmt17(v.real()) << " " << fmt17(v.imag()) << "\n";
    return chk.stable ? ok : schedule_error;
}

std::string manifest_text(const std::string& status, const std::string& cause, const KeyValueConfig* kv,
                          const ExperimentResult* res, double wall, const std::vector<std::string>& files) {
    std::ostringstream m;
    m << "{\n  \"status\": " << jstr(status) << ",\n";
    if (!cause.empty()) m << "  \"failure\": " << jstr(cause) << ",\n";
    m << "  \"config\": " << jstr(kv ? kv->echo() : "") << ",\n";
    m << "  \"wall_time_s\": " << jnum(wall) << ",\n";
    m << "  \"files\": [";
    for (std::size_t i = 0; i < files.size(); ++i) m << (i ? ", " : "") << jstr(files[i]);
    m << "]";
    if (res) {
        std::string sj = schedule_json(res->schedule);
        while (!sj.empty() && sj.back() == '\n') sj.pop_back();
        m << ",\n  \"schedule\": " << sj;
        m << ",\n  \"outer_steps\": " << res->steps << ",\n  \"rhs_evaluations\": " << res->rhs_evaluations;
        const auto& e = res->errors;
        m << ",\n  \"errors\": {\"L1\": " << jnum(e.L1) << ", \"L2\": " << jnum(e.L2) << ", \"Linf\": " << jnum(e.Linf)
          << ", \"mass_drift\": " << jnum(e.mass_drift) << ", \"min_rho\": " << jnum(e.min_rho)
          << ", \"max_rho\": " << jnum(e.max_rho) << "}";
        m << ",\n  \"observables\": {\"t\": [";
        for (std::size_t i = 0; i < res->observables.size(); ++i) m << (i ? "," : "") << jnum(res->observables[i].t);
        m << "], \"mass\": [";
        for (std::size_t i = 0; i < res->observables.size(); ++i) m << (i ? "," : "") << jnum(res->observables[i].mass);
        m << "], \"min_rho\": [";
        for (std::size_t i = 0; i < res->observables.size(); ++i) m << (i ? "," : "") << jnum(res->observables[i].min_rho);
        m << "], \"max_rho\": [";
        for (std::size_t i = 0; i < res->observables.size(); ++i) m << (i ? "," : "") << jnum(res->observables[i].max_rho);
        m << "]}";
    }
    m << "\n}\n";
    return m.str();
}

int cmd_run(const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    fs::path dir = output_dir(o, "run");
    KeyValueConfig kv;
    bool have_kv = false;
    std::vector<std::string> files;
    try {
        ExperimentConfig cfg = load_experiment(o, kv);
        have_kv = true;
        ExperimentResult res = run_experiment(cfg);
        SpaceGrid sg(cfg.dim, cfg.cells);
        for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
            std::ostringstream os;
            os << "# t = " << fmt17(res.snapshots[k].t) << "\n";
            write_density_csv(os, sg, res.snapshots[k].rho);
            std::string name = "rho_" + std::to_string(k) + ".csv";
            write_file_atomic(dir / name, os.str());
            files.push_back(name);
        }
        std::ostringstream ex;
        write_density_csv(ex, sg, res.rho_exact);
        write_file_atomic(dir / "rho_exact.csv", ex.str());
        files.push_back("rho_exact.csv");
        write_file_atomic(dir / "schedule.json", schedule_json(res.schedule));
        files.push_back("schedule.json");
        write_file_atomic(dir / "manifest.json", manifest_text("ok", "", &kv, &res, elapsed(), files));
        if (o.verbose)
            std::cerr << "L1 error " << fmt17(res.errors.L1) << ", outer steps " << res.steps << "\n";
        std::cout << dir.string() << "\n";
        return ok;
    } catch (const std::exception& e) {
        write_file_atomic(dir / "manifest.json",
                          manifest_text("failed", e.what(), have_kv ? &kv : nullptr, nullptr, elapsed(), files));
        throw;
    }
}

int cmd_sweep(const Options& o) {
    KeyValueConfig kv;
    if (o.config.empty()) throw ConfigError("--config is required");
    kv = KeyValueConfig::load(o.config);
    const std::string param = kv.get_string("sweep", "parameter");
    if (param != "epsilon" && param != "cells" && param != "dx")
        throw ConfigError(kv.source() + ": sweep parameter must be epsilon, cells or dx");
    const std::vector<double> values = kv.get_list("sweep", "values");
    std::vector<ExperimentConfig> cfgs;
    for (double v : values) {
        KeyValueConfig k = kv;
        if (param == "epsilon") k.set("problem", "epsilon", fmt17(v));
        else if (param == "cells") k.set("problem", "cells", std::to_string(static_cast<int>(std::lround(v))));
        else k.set("problem", "dx", fmt17(v));
        cfgs.push_back(ExperimentConfig::from_config(k));
    }
    std::vector<std::string> rows(cfgs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < cfgs.size();) {
            std::ostringstream r;
            r << fmt17(values[i]) << ',';
            try {
                ExperimentResult res = run_experiment(cfgs[i]);
                const auto& s = res.schedule;
                std::ostringstream M, K;
                for (int l = 0; l < s.levels(); ++l) {
                    M << (l ? ";" : "") << fmt17(s.M[l]);
                    K << (l ? ";" : "") << s.K[l];
                }
                const auto& e = res.errors;
                r << "ok," << s.levels() << ',' << fmt17(s.h0) << ',' << K.str() << ',' << M.str() << ',' << fmt17(s.cfl())
                  << ',' << fmt17(e.L1) << ',' << fmt17(e.L2) << ',' << fmt17(e.Linf) << ',' << fmt17(e.mass_drift) << ','
                  << fmt17(e.min_rho) << ',' << fmt17(e.max_rho);
            } catch (const std::exception& ex) {
                std::string msg = ex.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                r << "failed: " << msg << ",,,,,,,,,,,";
            }
            rows[i] = r.str();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, o.threads); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    std::ostringstream csv;
    csv << param << ",status,L,h0,K,M,CFL,L1,L2,Linf,mass_drift,min_rho,max_rho\n";
    for (const auto& r : rows) csv << r << '\n';
    fs::path dir = output_dir(o, "sweep");
    write_file_atomic(dir / "sweep.csv", csv.str());
    std::cout << csv.str();
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Telescopic projective integration for BGK kinetic equations"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "configuration file")->required();
        sub->add_option("--out", o.out, "output directory (default $TPI_OUTPUT_ROOT/<command>)");
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose", o.verbose, "extra diagnostics");
    };
    auto* spectrum = app.add_subcommand("spectrum", "dump the Fourier spectrum and its clusters");
    auto* plan = app.add_subcommand("plan", "print the TPI schedule for a configuration");
    auto* run = app.add_subcommand("run", "run an experiment and write snapshots and a manifest");
    auto* verify = app.add_subcommand("verify", "check a schedule against the spectrum");
    auto* sweep = app.add_subcommand("sweep", "run an epsilon or grid refinement study");
    for (auto* s : {spectrum, plan, run, verify, sweep}) add_common(s);
    verify->add_option("--schedule", o.schedule_file, "schedule JSON (default: plan from the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    try {
        if (*spectrum) return cmd_spectrum(o);
        if (*plan) return cmd_plan(o);
        if (*run) return cmd_run(o);
        if (*verify) return cmd_verify(o);
        if (*sweep) return cmd_sweep(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const ScheduleError& e) {
        std::cerr << "schedule error: " << e.what() << "\n";
        return schedule_error;
    } catch (const BlowUpError& e) {
        std::cerr << "integration blow-up: " << e.what() << "\n";
        return blowup_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return other_error;
    }
    return other_error;
}
