#include "spraylab/pnsk.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

namespace {

bool all_finite(const FluidState& s)
{
    auto finite = [](const Field& f) {
        return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
    };
    return finite(s.rho) && finite(s.u) && finite(s.c);
}

}  // namespace

double outflow_courant(const Grid1D& grid, std::span<const double> u, double dt)
{
    double worst = 0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
    {
        double const out = std::max(u[i + 1], 0.0) - std::min(u[i], 0.0);
        worst = std::max(worst, out * dt / grid.dx());
    }
    return worst;
}

Field step_continuity(const Grid1D& grid, const FluidState& state, double dt)
{
    std::size_t const n = grid.n_cells();
    if (state.rho.size() != n || state.u.size() != n + 1)
    {
        throw SizeError("step_continuity: field sizes do not match the grid");
    }
    if (!(dt > 0))
    {
        throw DomainError("step_continuity: dt must be positive");
    }
    double const courant = outflow_courant(grid, state.u, dt);
    if (courant > 1 + 1e-12)
    {
        throw StepRejected("outflow Courant number " + std::to_string(courant) + " exceeds 1");
    }

    // Written as retained fraction plus inflow so every term is non-negative.
    double const r = dt / grid.dx();
    auto const& u = state.u;
    auto const& rho = state.rho;
    Field next(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const out = std::max(u[i + 1], 0.0) - std::min(u[i], 0.0);
        double in = 0;
        if (i > 0)
            in += std::max(u[i], 0.0) * rho[i - 1];
        if (i + 1 < n)
            in -= std::min(u[i + 1], 0.0) * rho[i + 1];
        next[i] = rho[i] * std::max(1 - r * out, 0.0) + r * in;
        if (!std::isfinite(next[i]))
            throw BlowUp("non-finite density after transport");
    }
    return next;
}

FluidState step_pnsk(const Grid1D& grid,
                     const FluidState& state,
                     const PressureLaw& law,
                     const Params& params,
                     double dt)
{
    FluidState next;
    next.rho = step_continuity(grid, state, dt);

    Field pressure(next.rho.size());
    for (std::size_t i = 0; i < pressure.size(); ++i)
        pressure[i] = law.peff(next.rho[i]);

    next.u = step_momentum(grid, {state.rho, next.rho, state.u, state.c, pressure}, params, dt);
    next.c = step_order_parameter(grid, next.rho, state.c, params, dt);
    next.t = state.t + dt;
    return next;
}

double c_mean_reference(double m_c0, double m_rho, const Params& params, double t)
{
    return m_rho + (m_c0 - m_rho) * std::exp(-(params.alpha / params.beta) * t);
}

//---------------------------------------------------------------------------//
PnskTrajectory run_pnsk(const Grid1D& grid,
                        const FluidState& init,
                        const PressureLaw& law,
                        const Params& params,
                        std::span<const double> output_times,
                        const RunOptions& options)
{
    params.validate();
    init.validate(grid);
    for (std::size_t k = 0; k < output_times.size(); ++k)
    {
        if (output_times[k] < init.t || (k > 0 && !(output_times[k] > output_times[k - 1])))
        {
            throw DomainError("output times must be increasing and not before the initial time");
        }
    }

    PnskTrajectory traj;
    traj.norms = NormMonitor(law.gamma());
    traj.snapshots.push_back(init);

    double const length = grid.length();
    double const mass0 = integrate(grid, init.rho);
    double const m_c0 = integrate(grid, init.c) / length;
    EnergyBudget budget(grid, law, params, init);

    auto record = [&](const FluidState& s, double dt) {
        MonitorRow row;
        row.t = s.t;
        row.dt = dt;
        row.mass = integrate(grid, s.rho);
        row.c_integral = integrate(grid, s.c);
        row.c_reference = length * c_mean_reference(m_c0, mass0 / length, params, s.t - init.t);
        auto [lo, hi] = std::minmax_element(s.rho.begin(), s.rho.end());
        row.rho_min = *lo;
        row.rho_max = *hi;
        traj.monitors.push_back(row);
        if (mass0 > 0)
            traj.max_mass_drift = std::max(traj.max_mass_drift, std::abs(row.mass - mass0) / mass0);
        traj.norms.observe(grid, s.rho);
    };
    record(init, 0);
    traj.mass.push_back(mass0);

    FluidState current = init;
    for (double t_out : output_times)
    {
        if (t_out <= current.t)
            continue;
        while (current.t < t_out)
        {
            double dt = options.fixed_dt > 0
                            ? options.fixed_dt
                            : stable_dt(grid, current.rho, current.u, law, params);
            bool const last = current.t + dt >= t_out - 1e-12 * std::max(1.0, std::abs(t_out));
            if (last)
                dt = t_out - current.t;

            FluidState next;
            for (int attempt = 0;; ++attempt)
            {
                try
                {
                    next = step_pnsk(grid, current, law, params, dt);
                    break;
                }
                catch (const StepRejected&)
                {
                    if (attempt >= 30)
                        throw;
                    dt *= 0.5;
                }
                catch (const BlowUp& e)
                {
                    throw RunAborted(e.what(), current);
                }
            }
            if (!all_finite(next))
            {
                throw RunAborted("non-finite field at t = " + std::to_string(next.t), current);
            }
            bool const reached = next.t >= t_out - 1e-12 * std::max(1.0, std::abs(t_out));
            if (reached)
                next.t = t_out;

            std::vector<double> pressure(next.rho.size());
            for (std::size_t i = 0; i < pressure.size(); ++i)
                pressure[i] = law.peff(next.rho[i]);
            traj.norms.accumulate(grid, next.rho, pressure, dt);
            budget.add_step(current, next);
            record(next, dt);
            traj.max_dt = std::max(traj.max_dt, dt);
            ++traj.steps;

            current = std::move(next);
            if (options.record_every_step && !reached)
            {
                traj.snapshots.push_back(current);
                traj.mass.push_back(integrate(grid, current.rho));
            }
        }
        traj.snapshots.push_back(current);
        traj.mass.push_back(integrate(grid, current.rho));
    }
    traj.energy = budget.rows();
    return traj;
}

}  // namespace spraylab
