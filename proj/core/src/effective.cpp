#include "spraylab/effective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spraylab/errors.hpp"

namespace spraylab {

//---------------------------------------------------------------------------//
void EffectiveState::refresh(const PressureLaw& law)
{
    rho.resize(nu.size());
    pbar.resize(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
    {
        rho[i] = mean(nu[i]);
        pbar[i] = moment(nu[i], [&law](double xi) { return law.peff(xi); });
    }
}

void EffectiveState::validate(const Grid1D& grid, const Params& params) const
{
    std::size_t const n = grid.n_cells();
    if (nu.size() != n || c.size() != n || u.size() != n + 1 || rho.size() != n || pbar.size() != n)
    {
        throw SizeError("effective state sizes do not match the grid");
    }
    if (u.front() != 0 || u.back() != 0)
    {
        throw DomainError("velocity violates no-slip at the walls");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        if (nu[i].empty())
        {
            throw DomainError("cell " + std::to_string(i) + " carries no measure");
        }
        double const defect = nu[i].total_weight() - 1;
        if (std::abs(defect) > params.renorm_tol)
        {
            throw DomainError("cell " + std::to_string(i) + " measure is not normalized (defect "
                              + std::to_string(defect) + ")");
        }
        for (auto const& a : nu[i].atoms())
        {
            if (!(a.xi >= 0) || !(a.weight > 0))
            {
                throw DomainError("cell " + std::to_string(i) + " has an invalid atom");
            }
        }
        double const r = mean(nu[i]);
        if (std::abs(r - rho[i]) > 1e-12 * (1 + std::abs(r)))
        {
            throw DomainError("density cache is stale in cell " + std::to_string(i));
        }
    }
}

FluidState EffectiveState::fluid() const
{
    return {rho, u, c, t};
}

EffectiveState dirac_state(const FluidState& fluid, const PressureLaw& law)
{
    EffectiveState s;
    s.nu.reserve(fluid.rho.size());
    for (double r : fluid.rho)
        s.nu.push_back(AtomicMeasure::dirac(r));
    s.u = fluid.u;
    s.c = fluid.c;
    s.t = fluid.t;
    s.refresh(law);
    return s;
}

EffectiveState uniform_state(const Grid1D& grid,
                             const AtomicMeasure& m,
                             std::span<const double> u,
                             std::span<const double> c,
                             const PressureLaw& law)
{
    EffectiveState s;
    s.nu.assign(grid.n_cells(), m);
    s.u.assign(u.begin(), u.end());
    s.c.assign(c.begin(), c.end());
    s.refresh(law);
    return s;
}

//---------------------------------------------------------------------------//
namespace {

// Concatenated atoms, sorted, with identical positions merged.
AtomicMeasure merge_sorted(std::vector<Atom> atoms)
{
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.xi < b.xi; });
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (auto const& a : atoms)
    {
        if (!out.empty() && out.back().xi == a.xi)
            out.back().weight += a.weight;
        else
            out.push_back(a);
    }
    AtomicMeasure m;
    m.mutable_atoms() = std::move(out);
    return m;
}

void append_scaled(std::vector<Atom>& dst, const AtomicMeasure& src, double factor)
{
    if (factor <= 0)
        return;
    for (auto const& a : src.atoms())
        dst.push_back({a.weight * factor, a.xi});
}

double support_width(const AtomicMeasure& m)
{
    if (m.empty())
        return 0;
    auto [lo, hi] = std::minmax_element(
        m.atoms().begin(), m.atoms().end(), [](const Atom& a, const Atom& b) { return a.xi < b.xi; });
    return hi->xi - lo->xi;
}

}  // namespace

MeasureField advect_measure(const Grid1D& grid, const MeasureField& nu, std::span<const double> u, double dt)
{
    std::size_t const n = grid.n_cells();
    if (nu.size() != n || u.size() != n + 1)
    {
        throw SizeError("advect_measure: field sizes do not match the grid");
    }
    double const courant = outflow_courant(grid, u, dt);
    if (courant > 1 + 1e-12)
    {
        throw StepRejected("measure transport Courant number " + std::to_string(courant) + " exceeds 1");
    }
    double const r = dt / grid.dx();
    MeasureField next(n);
    std::vector<Atom> buffer;
    for (std::size_t i = 0; i < n; ++i)
    {
        buffer.clear();
        double const out = r * (std::max(u[i + 1], 0.0) - std::min(u[i], 0.0));
        append_scaled(buffer, nu[i], 1 - out);
        if (i > 0 && u[i] > 0)
            append_scaled(buffer, nu[i - 1], r * u[i]);
        if (i + 1 < n && u[i + 1] < 0)
            append_scaled(buffer, nu[i + 1], -r * u[i + 1]);
        next[i] = merge_sorted(buffer);
    }
    return next;
}

//---------------------------------------------------------------------------//
std::vector<double> xi_velocity(const AtomicMeasure& m, double divu, const PressureLaw& law, const Params& params)
{
    double const pbar = averaged_pressure(m, law);
    std::vector<double> v;
    v.reserve(m.size());
    for (auto const& a : m.atoms())
        v.push_back((q_drift(pbar, law, params, a.xi) - divu) * a.xi);
    return v;
}

ReactionResult react_measure(const AtomicMeasure& m,
                             double divu,
                             const PressureLaw& law,
                             const Params& params,
                             double dt)
{
    if (!std::isfinite(divu))
    {
        throw BlowUp("non-finite divergence in reaction substep");
    }
    ReactionResult result;
    if (m.empty())
        return result;
    double const pbar = averaged_pressure(m, law);
    auto rate = [&](double xi) { return q_drift(pbar, law, params, xi) - divu; };

    std::vector<Atom> atoms;
    atoms.reserve(m.size());
    for (auto const& a : m.atoms())
    {
        double const a0 = rate(a.xi);
        double const xi_star = std::max(a.xi + dt * a0 * a.xi, 0.0);
        double const w_star = a.weight * (1 - dt * a0);
        double const a1 = rate(xi_star);
        double xi = a.xi + 0.5 * dt * (a0 * a.xi + a1 * xi_star);
        double const w = a.weight - 0.5 * dt * (a0 * a.weight + a1 * w_star);
        if (!std::isfinite(xi) || !std::isfinite(w))
        {
            throw BlowUp("non-finite atom in reaction substep");
        }
        if (xi < 0)
        {
            xi = 0;
            ++result.clamped;
        }
        if (w > 0)
            atoms.push_back({w, xi});
    }
    if (atoms.empty())
    {
        throw NumericError("reaction substep removed every atom", 0);
    }
    result.measure.mutable_atoms() = std::move(atoms);
    result.defect = result.measure.renormalize();
    return result;
}

//---------------------------------------------------------------------------//
double effective_stable_dt(const Grid1D& grid,
                           const EffectiveState& state,
                           const PressureLaw& law,
                           const Params& params)
{
    double max_u = 0;
    for (double v : state.u)
        max_u = std::max(max_u, std::abs(v));
    Field const divu = div_face_to_center(grid, state.u);
    double max_cs = 0;
    double max_rate = 0;
    for (std::size_t i = 0; i < state.nu.size(); ++i)
    {
        double const pbar = averaged_pressure(state.nu[i], law);
        for (auto const& a : state.nu[i].atoms())
        {
            max_cs = std::max(max_cs, std::sqrt(std::max(law.dpeff(a.xi), 0.0)));
            max_rate = std::max(max_rate, std::abs(q_drift(pbar, law, params, a.xi) - divu[i]));
        }
    }
    double dt = params.dt_max;
    if (max_u + max_cs > 0)
        dt = std::min(dt, params.cfl * grid.dx() / (max_u + max_cs));
    if (max_rate > 0)
        dt = std::min(dt, params.cfl / max_rate);
    return dt;
}

EffectiveState step_effective(const Grid1D& grid,
                              const EffectiveState& state,
                              const PressureLaw& law,
                              const Params& params,
                              double dt,
                              EffectiveStepInfo* info)
{
    if (!(dt > 0))
    {
        throw DomainError("step_effective: dt must be positive");
    }
    EffectiveState next;
    next.nu = advect_measure(grid, state.nu, state.u, dt);

    Field const divu = div_face_to_center(grid, state.u);
    EffectiveStepInfo local;
    for (std::size_t i = 0; i < next.nu.size(); ++i)
    {
        auto reacted = react_measure(next.nu[i], divu[i], law, params, dt);
        local.max_defect = std::max(local.max_defect, std::abs(reacted.defect));
        local.clamped += reacted.clamped;
        if (params.compression && reacted.measure.size() > 1)
        {
            double const eps = params.atom_merge_eps * support_width(reacted.measure);
            next.nu[i] = compress(reacted.measure, eps, params.max_atoms);
        }
        else
        {
            next.nu[i] = std::move(reacted.measure);
        }
    }
    next.refresh(law);

    Field const flux = donor_cell_flux(grid, state.rho, state.u);
    Field residual(grid.n_cells());
    for (std::size_t i = 0; i < residual.size(); ++i)
        residual[i] = (next.rho[i] - state.rho[i]) / dt + (flux[i + 1] - flux[i]) / grid.dx();
    local.continuity_residual = l2_norm(grid, residual);

    next.u = step_momentum(grid, {state.rho, next.rho, state.u, state.c, next.pbar}, params, dt);
    next.c = step_order_parameter(grid, next.rho, state.c, params, dt);
    next.t = state.t + dt;
    if (info)
        *info = local;
    return next;
}

EnergyReport effective_energy(const Grid1D& grid,
                              const EffectiveState& state,
                              const PressureLaw& law,
                              const Params& params)
{
    auto e = total_energy(grid, state.fluid(), law, params);
    double potential = 0;
    for (auto const& m : state.nu)
        potential += moment(m, [&law](double xi) { return law.potential(xi); });
    e.potential_w = potential * grid.dx();
    e.e0 = e.total();
    return e;
}

//---------------------------------------------------------------------------//
EffectiveTrajectory run_effective(const Grid1D& grid,
                                  const EffectiveState& init,
                                  const PressureLaw& law,
                                  const Params& params,
                                  std::span<const double> output_times,
                                  const RunOptions& options)
{
    params.validate();
    init.validate(grid, params);
    for (std::size_t k = 0; k < output_times.size(); ++k)
    {
        if (output_times[k] < init.t || (k > 0 && !(output_times[k] > output_times[k - 1])))
        {
            throw DomainError("output times must be increasing and not before the initial time");
        }
    }

    EffectiveTrajectory traj;
    traj.norms = NormMonitor(law.gamma());
    traj.snapshots.push_back(init);

    double const length = grid.length();
    double const mass0 = integrate(grid, init.rho);
    double const m_c0 = integrate(grid, init.c) / length;

    auto const e_init = effective_energy(grid, init, law, params);
    double const e0 = e_init.total();
    double visc = 0;
    double order = 0;
    traj.energy.push_back({init.t, e_init});

    auto record = [&](const EffectiveState& s, double dt, const EffectiveStepInfo& info) {
        MonitorRow row;
        row.t = s.t;
        row.dt = dt;
        row.mass = integrate(grid, s.rho);
        row.c_integral = integrate(grid, s.c);
        row.c_reference = length * c_mean_reference(m_c0, mass0 / length, params, s.t - init.t);
        auto [lo, hi] = std::minmax_element(s.rho.begin(), s.rho.end());
        row.rho_min = *lo;
        row.rho_max = *hi;
        row.normalization_defect = info.max_defect;
        row.continuity_residual = info.continuity_residual;
        for (auto const& m : s.nu)
            row.max_atoms = std::max(row.max_atoms, m.size());
        traj.monitors.push_back(row);
        if (mass0 > 0)
            traj.max_mass_drift = std::max(traj.max_mass_drift, std::abs(row.mass - mass0) / mass0);
        traj.norms.observe(grid, s.rho);
    };
    record(init, 0, {});
    traj.mass.push_back(mass0);

    double const snap_tol = 1e-12;
    EffectiveState current = init;
    for (double t_out : output_times)
    {
        if (t_out <= current.t)
            continue;
        while (current.t < t_out)
        {
            double dt = options.fixed_dt > 0 ? options.fixed_dt : effective_stable_dt(grid, current, law, params);
            if (current.t + dt >= t_out - snap_tol * std::max(1.0, std::abs(t_out)))
                dt = t_out - current.t;

            EffectiveState next;
            EffectiveStepInfo info;
            for (int attempt = 0;; ++attempt)
            {
                try
                {
                    next = step_effective(grid, current, law, params, dt, &info);
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
                    throw RunAborted(e.what(), current.fluid());
                }
            }
            bool const reached = next.t >= t_out - snap_tol * std::max(1.0, std::abs(t_out));
            if (reached)
                next.t = t_out;

            traj.norms.accumulate(grid, next.rho, next.pbar, dt);
            visc += dt * viscous_dissipation_rate(grid, next.u, params);
            order += dt * order_dissipation_rate(grid, current.c, next.c, params, dt);
            auto e = effective_energy(grid, next, law, params);
            e.e0 = e0;
            e.dissipation_visc = visc;
            e.dissipation_c = order;
            traj.energy.push_back({next.t, e});
            traj.clamp_events += info.clamped;
            record(next, dt, info);
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
    return traj;
}

}  // namespace spraylab
