#include "spraylab/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>

#include "spraylab/effective.hpp"
#include "spraylab/errors.hpp"
#include "spraylab/lab.hpp"
#include "spraylab/pnsk.hpp"

namespace spraylab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::function<double(double)> observable(const std::string& name, const PressureLaw& law)
{
    if (name == "xi")
        return identity_observable().value;
    if (name == "peff")
        return [law](double z) { return law.peff(z); };
    return bounded_observable().value;
}

/// Run `tasks` on up to `threads` workers; each task writes only its own slot.
void run_all(std::vector<std::function<void()>> const& tasks, unsigned threads)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++)
            tasks[k]();
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
}

}  // namespace

ConvergenceReport run_convergence(const RunConfig& config, unsigned threads)
{
    config.validate();
    Grid1D const grid = config.grid();
    PressureLaw const law = config.law();
    Params const& params = config.params;
    RunOptions options;
    options.fixed_dt = config.fixed_dt;

    ConvergenceReport report;
    report.exponents = NormExponents::from_gamma(law.gamma());
    report.window_h = config.window_h;
    report.observables = config.observables;

    std::size_t const k_runs = config.n_ladder.size();
    std::vector<std::optional<PnskTrajectory>> detailed(k_runs);
    std::optional<EffectiveTrajectory> effective;
    report.rows.resize(k_runs);

    std::vector<std::function<void()>> tasks;
    tasks.push_back([&] {
        auto const start = Clock::now();
        try
        {
            effective = run_effective(grid, effective_initial_state(config), law, params, config.output_times,
                                      options);
            report.effective.ok = true;
        }
        catch (const std::exception& e)
        {
            report.effective.error = e.what();
        }
        report.effective.runtime_s = seconds_since(start);
    });
    for (std::size_t k = 0; k < k_runs; ++k)
    {
        tasks.push_back([&, k] {
            auto& row = report.rows[k];
            row.n = config.n_ladder[k];
            auto const start = Clock::now();
            try
            {
                detailed[k] = run_pnsk(grid, detailed_initial_state(config, row.n), law, params,
                                       config.output_times, options);
                row.ok = true;
            }
            catch (const std::exception& e)
            {
                row.error = e.what();
            }
            row.runtime_s = seconds_since(start);
        });
    }
    run_all(tasks, threads);

    // Single-threaded reduction in ladder order.
    if (effective)
    {
        auto& s = report.effective;
        s.e0 = effective_energy(grid, effective->snapshots.front(), law, params).total();
        s.steps = effective->steps;
        s.clamp_events = effective->clamp_events;
        for (auto const& m : effective->monitors)
        {
            s.max_normalization_defect = std::max(s.max_normalization_defect, m.normalization_defect);
            s.max_atoms = std::max(s.max_atoms, m.max_atoms);
        }
    }
    for (std::size_t k = 0; k < k_runs; ++k)
    {
        auto& row = report.rows[k];
        if (!detailed[k])
            continue;
        auto const& traj = *detailed[k];
        row.e0 = total_energy(grid, traj.snapshots.front(), law, params).total();
        row.rho_linf_l_gamma_tilde = traj.norms.rho_linf_l_gamma_tilde();
        row.rho_l_gamma_tilde_plus_theta = traj.norms.rho_l_gamma_tilde_plus_theta();
        row.peff_l_delta = traj.norms.peff_l_delta();
        row.max_mass_drift = traj.max_mass_drift;
        row.steps = traj.steps;
        row.rho_min = traj.monitors.front().rho_min;
        for (auto const& m : traj.monitors)
            row.rho_min = std::min(row.rho_min, m.rho_min);
        if (!effective)
        {
            row.ok = false;
            row.error = "effective run failed: " + report.effective.error;
            continue;
        }
        for (auto const& name : config.observables)
        {
            auto const g = observable(name, law);
            row.distance[name] = weak_distance(grid,
                                               density_observable(traj.snapshots, g),
                                               measure_moments(effective->snapshots, g),
                                               config.window_h);
        }
        row.evf_gap = evf_gap(grid, traj.snapshots, effective->snapshots, law, params, bounded_observable(),
                              config.window_h);
    }
    return report;
}

}  // namespace spraylab
