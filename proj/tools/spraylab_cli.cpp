// Command-line driver: detailed and effective runs, convergence studies and
// weak-form residual checks, all configured by one JSON file.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spraylab/config.hpp"
#include "spraylab/effective.hpp"
#include "spraylab/errors.hpp"
#include "spraylab/lab.hpp"
#include "spraylab/pnsk.hpp"
#include "spraylab/report.hpp"
#include "spraylab/study.hpp"

namespace fs = std::filesystem;
using namespace spraylab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_aborted = 3;

struct Globals
{
    fs::path out{"."};
    unsigned threads{std::max(1u, std::thread::hardware_concurrency())};
    std::optional<std::uint64_t> seed;
};

RunConfig load(const std::string& path, const Globals& g)
{
    RunConfig cfg = parse_config(path);
    if (g.seed)
        cfg.seed = *g.seed;
    return cfg;
}

std::ofstream open_out(const fs::path& dir, const std::string& name)
{
    std::ofstream os(dir / name);
    if (!os)
        throw Error("cannot write " + (dir / name).string());
    return os;
}

std::string indexed(const std::string& stem, std::size_t k)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "_%03zu.csv", k);
    return stem + buf;
}

int run_pnsk_cmd(const std::string& config_path, const Globals& g)
{
    auto const cfg = load(config_path, g);
    auto const grid = cfg.grid();
    RunOptions opts;
    opts.fixed_dt = cfg.fixed_dt;
    auto const traj = run_pnsk(grid, detailed_initial_state(cfg, cfg.oscillation.n_interfaces), cfg.law(),
                               cfg.params, cfg.output_times, opts);
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    {
        auto os = open_out(g.out, indexed("fields", k));
        write_fields_csv(os, grid, traj.snapshots[k]);
    }
    auto energy = open_out(g.out, "energy.csv");
    write_energy_csv(energy, traj.energy);
    auto monitors = open_out(g.out, "monitors.csv");
    write_monitors_csv(monitors, traj.monitors);
    auto report = open_out(g.out, "report.json");
    write_run_report(report, summarize(traj), cfg);
    std::cout << "pnsk: " << traj.steps << " steps, max mass drift " << traj.max_mass_drift << '\n';
    return exit_ok;
}

int run_effective_cmd(const std::string& config_path, const Globals& g)
{
    auto const cfg = load(config_path, g);
    auto const grid = cfg.grid();
    RunOptions opts;
    opts.fixed_dt = cfg.fixed_dt;
    auto const traj = run_effective(grid, effective_initial_state(cfg), cfg.law(), cfg.params, cfg.output_times,
                                    opts);
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
    {
        auto const& s = traj.snapshots[k];
        auto fields = open_out(g.out, indexed("fields", k));
        write_fields_csv(fields, grid, s.fluid());
        auto measure = open_out(g.out, indexed("measure", k));
        write_measure_csv(measure, grid, s);
        auto cdf_os = open_out(g.out, indexed("cdf", k));
        write_cdf_csv(cdf_os, grid, s);
    }
    auto energy = open_out(g.out, "energy.csv");
    write_energy_csv(energy, traj.energy);
    auto monitors = open_out(g.out, "monitors.csv");
    write_monitors_csv(monitors, traj.monitors);
    auto report = open_out(g.out, "report.json");
    write_run_report(report, summarize(traj), cfg);
    std::cout << "effective: " << traj.steps << " steps, " << traj.clamp_events << " clamp events\n";
    return exit_ok;
}

int convergence_cmd(const std::string& config_path, const Globals& g)
{
    auto const cfg = load(config_path, g);
    auto const report = run_convergence(cfg, g.threads);
    auto os = open_out(g.out, "report.json");
    write_convergence_report(os, report, cfg);
    auto rt = open_out(g.out, "runtimes.csv");
    write_runtimes_csv(rt, report);

    bool failed = !report.effective.ok;
    if (failed)
        std::cerr << "effective run failed: " << report.effective.error << '\n';
    for (auto const& row : report.rows)
    {
        if (!row.ok)
        {
            std::cerr << "n = " << row.n << " failed: " << row.error << '\n';
            failed = true;
            continue;
        }
        std::cout << "n = " << row.n;
        for (auto const& [name, d] : row.distance)
            std::cout << "  " << name << " " << d;
        std::cout << "  evf " << row.evf_gap << '\n';
    }
    return failed ? exit_aborted : exit_ok;
}

// Residuals at the configured resolution and once refined (dx and dt halved).
int residuals_cmd(const std::string& config_path, const std::string& equation, std::string model, const Globals& g)
{
    auto const base = load(config_path, g);
    Equation const which = equation_from_string(equation);
    if (model.empty())
        model = which == Equation::cdf ? "effective" : "pnsk";
    if (model != "pnsk" && model != "effective")
        throw ValidationError("--model must be pnsk or effective");

    nlohmann::ordered_json doc;
    doc["schema_version"] = ConvergenceReport::schema_version;
    doc["kind"] = "residuals";
    doc["equation"] = to_string(which);
    doc["model"] = model;
    doc["config"] = nlohmann::ordered_json::parse(dump_config(base));
    auto csv = open_out(g.out, "residuals.csv");
    csv << "equation,model,test_function,n_cells,residual\n";

    auto const law = base.law();
    auto const tests = standard_test_functions(base.length);
    std::vector<std::vector<double>> values;
    for (int level = 0; level < 2; ++level)
    {
        RunConfig cfg = base;
        cfg.n_cells = base.n_cells << level;
        cfg.params.dt_max = base.params.dt_max / (1 << level);
        cfg.fixed_dt = base.fixed_dt / (1 << level);
        auto const grid = cfg.grid();
        RunOptions opts;
        opts.record_every_step = true;
        opts.fixed_dt = cfg.fixed_dt;
        std::vector<double> row;
        if (model == "pnsk")
        {
            auto const traj = run_pnsk(grid, detailed_initial_state(cfg, cfg.oscillation.n_interfaces), law,
                                       cfg.params, cfg.output_times, opts);
            for (auto const& phi : tests)
                row.push_back(weak_residual(grid, traj.snapshots, law, cfg.params, which, phi));
        }
        else
        {
            auto const traj = run_effective(grid, effective_initial_state(cfg), law, cfg.params, cfg.output_times,
                                            opts);
            for (auto const& phi : tests)
                row.push_back(weak_residual(grid, traj.snapshots, law, cfg.params, which, phi));
        }
        for (std::size_t k = 0; k < tests.size(); ++k)
        {
            csv << to_string(which) << ',' << model << ',' << tests[k].name << ',' << cfg.n_cells << ','
                << nlohmann::json(row[k]).dump() << '\n';
        }
        values.push_back(std::move(row));
    }

    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < tests.size(); ++k)
    {
        double const ratio = values[0][k] / values[1][k];
        results.push_back({{"test_function", tests[k].name},
                           {"coarse", values[0][k]},
                           {"fine", values[1][k]},
                           {"ratio", std::isfinite(ratio) ? nlohmann::ordered_json(ratio) : nullptr}});
        std::cout << tests[k].name << ": " << values[0][k] << " -> " << values[1][k] << " (ratio " << ratio << ")\n";
    }
    doc["results"] = results;
    auto os = open_out(g.out, "report.json");
    os << doc.dump(2) << '\n';
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"One-dimensional two-phase flow laboratory: detailed and homogenized models"};
    app.require_subcommand(1);
    Globals g;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    app.add_option("--out", out_dir, "Output directory (created if missing)");
    app.add_option("--threads", g.threads, "Worker threads for the convergence ladder")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");

    std::string config;
    std::string equation;
    std::string model;
    auto* pnsk = app.add_subcommand("run-pnsk", "Run the detailed model");
    pnsk->add_option("config", config, "JSON configuration")->required();
    auto* eff = app.add_subcommand("run-effective", "Run the effective (Young measure) model");
    eff->add_option("config", config, "JSON configuration")->required();
    auto* conv = app.add_subcommand("convergence", "Compare the n-ladder of detailed runs with the effective run");
    conv->add_option("config", config, "JSON configuration")->required();
    auto* res = app.add_subcommand("residuals", "Weak-form residuals at two resolutions");
    res->add_option("config", config, "JSON configuration")->required();
    res->add_option("--equation", equation, "continuity, momentum, parabolic, renormalized, kinetic or cdf")
        ->required();
    res->add_option("--model", model, "pnsk or effective (default: effective for cdf, pnsk otherwise)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try
    {
        g.out = out_dir;
        if (seed_opt->count() > 0)
            g.seed = seed;
        fs::create_directories(g.out);
        if (*pnsk)
            return run_pnsk_cmd(config, g);
        if (*eff)
            return run_effective_cmd(config, g);
        if (*conv)
            return convergence_cmd(config, g);
        return residuals_cmd(config, equation, model, g);
    }
    catch (const ValidationError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    catch (const std::exception& e)
    {
        std::cerr << "aborted: " << e.what() << '\n';
        return exit_aborted;
    }
}
