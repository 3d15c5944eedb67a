// Command-line harness: eigenpair tables, single runs, regime classification,
// stored-run verification, and parameter sweeps.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "plapwave/errors.hpp"
#include "plapwave/galerkin_dynamics.hpp"
#include "plapwave/run_io.hpp"
#include "plapwave/sweep.hpp"
#include "plapwave/verify.hpp"

using nlohmann::json;

namespace {

int cmd_spectrum(double length, int modes, double tol, const std::string& output) {
    const plapwave::DomainSpec domain{length};
    const plapwave::QuadratureRule quad =
        plapwave::composite_gauss_legendre(length, 256, 8);
    const auto pairs = plapwave::compute_eigenpairs(domain, modes, tol, quad);
    const std::string text = plapwave::eigenpairs_to_json(pairs).dump(2) + "\n";
    if (output.empty())
        std::cout << text;
    else
        plapwave::atomic_write_file(output, text);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const plapwave::SimulationConfig cfg = plapwave::load_config_file(config_path);
    const auto start = std::chrono::steady_clock::now();
    const plapwave::Trajectory traj = plapwave::simulate(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    plapwave::write_run_artifacts(out_dir, traj, wall);
    std::cout << "termination: " << plapwave::termination_name(traj.termination)
              << " at t = " << plapwave::format_double(traj.termination_time) << "\n";
    switch (traj.termination) {
        case plapwave::Termination::Completed:
            return 0;
        case plapwave::Termination::BlowupDetected:
            return cfg.expect == plapwave::Expectation::Blowup ? 0 : 2;
        case plapwave::Termination::DtUnderflow:
            return 3;
    }
    return 0;
}

int cmd_classify(double p, double q, double r) {
    const plapwave::RegimeReport rep = plapwave::classify_exponents(p, q, r);
    json j;
    j["p"] = rep.p;
    j["q"] = rep.q;
    j["r"] = rep.r;
    j["thresholds"] = {{"q_max_3d", rep.q_max_3d},
                       {"r_max_3d", rep.r_max_3d},
                       {"global_cutoff", rep.global_cutoff},
                       {"blowup_cutoff", rep.blowup_cutoff}};
    j["admissible_3d"] = rep.admissible_3d;
    j["global_guaranteed"] = rep.global_guaranteed;
    j["blowup_candidate"] = rep.blowup_candidate;
    j["geometry_note"] = rep.geometry_note;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& run_dir, const plapwave::VerifyOptions& opts) {
    const plapwave::VerifyResult result = plapwave::verify_run(run_dir, opts);
    std::cout << result.report.dump(2) << "\n";
    if (!result.pass) {
        std::cerr << "verify: invariant violation:";
        for (const std::string& name : result.violations) std::cerr << " " << name;
        std::cerr << "\n";
        return 4;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& parameter,
              const std::vector<std::string>& values, const std::string& out_dir,
              int jobs) {
    std::ifstream in(config_path);
    if (!in) throw plapwave::ConfigError("cannot open config file: " + config_path);
    json base;
    in >> base;

    plapwave::SweepOptions opts;
    opts.parameter = parameter;
    opts.jobs = jobs;
    for (const std::string& v : values) opts.values.push_back(json::parse(v));
    const json index = plapwave::sweep_runs(base, out_dir, opts);
    std::cout << index.dump(2) << "\n";
    return index.value("all_ok", false) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-Galerkin simulator for a strongly damped p-Laplacian wave "
                 "equation with Robin boundary sources"};
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "compute Robin eigenpairs");
    double length = 3.14159265358979323846;
    int modes = 16;
    double tol = 1e-12;
    std::string output;
    spectrum->add_option("--length", length, "interval length L")
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--modes", modes, "number of eigenpairs")
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--tol", tol, "bisection width")->check(CLI::PositiveNumber);
    spectrum->add_option("--output", output, "output file (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "run one configured simulation");
    std::string config_path, out_dir = "run";
    simulate->add_option("--config", config_path, "config JSON path")->required();
    simulate->add_option("--out", out_dir, "output directory");

    auto* classify = app.add_subcommand("classify", "report the exponent regime");
    double p = 0.0, q = 0.0, r = 0.0;
    classify->add_option("--p", p, "p-Laplacian exponent")->required();
    classify->add_option("--q", q, "interior source exponent")->required();
    classify->add_option("--r", r, "boundary source exponent")->required();

    auto* verify = app.add_subcommand("verify", "re-check invariants on a stored run");
    std::string run_dir;
    plapwave::VerifyOptions vopts;
    verify->add_option("--run", run_dir, "run directory")->required();
    verify->add_option("--residual-tol", vopts.residual_tol,
                       "cap on the recomputed energy residual");
    verify->add_option("--ledger-tol", vopts.ledger_tol,
                       "stored-vs-recomputed mismatch tolerance");

    auto* sweep = app.add_subcommand("sweep", "run one simulation per parameter value");
    std::string sweep_config, sweep_param, sweep_out = "sweep";
    std::vector<std::string> sweep_values;
    int sweep_jobs = 0;
    sweep->add_option("--config", sweep_config, "base config JSON path")->required();
    sweep->add_option("--param", sweep_param,
                      "config field (JSON pointer or dotted path)")
        ->required();
    sweep->add_option("--values", sweep_values, "values, parsed as JSON scalars")
        ->required();
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--jobs", sweep_jobs, "max concurrent runs (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // normalize every usage error to exit 1
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(length, modes, tol, output);
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
        if (classify->parsed()) return cmd_classify(p, q, r);
        if (verify->parsed()) return cmd_verify(run_dir, vopts);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, sweep_param, sweep_values, sweep_out,
                             sweep_jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
