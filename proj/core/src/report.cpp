#include "spraylab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

namespace spraylab {

using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest representation that reads back to the same double.
std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// JSON has no NaN/Inf; such values are written as null.
ordered_json jnum(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json exponents_json(const NormExponents& e)
{
    return {{"gamma_tilde", e.gamma_tilde}, {"theta", e.theta}, {"delta", e.delta}};
}

}  // namespace

void write_fields_csv(std::ostream& os, const Grid1D& grid, const FluidState& state)
{
    Field const uc = face_to_center(grid, state.u);
    os << "t,x,rho,u_center,c\n";
    for (std::size_t i = 0; i < grid.n_cells(); ++i)
    {
        os << num(state.t) << ',' << num(grid.center(i)) << ',' << num(state.rho[i]) << ',' << num(uc[i]) << ','
           << num(state.c[i]) << '\n';
    }
}

void write_measure_csv(std::ostream& os, const Grid1D& grid, const EffectiveState& state)
{
    os << "t,x_cell,atom,weight,xi\n";
    for (std::size_t i = 0; i < state.nu.size(); ++i)
    {
        AtomicMeasure m = state.nu[i];
        m.sort();
        std::size_t k = 0;
        for (auto const& a : m.atoms())
        {
            os << num(state.t) << ',' << num(grid.center(i)) << ',' << k++ << ',' << num(a.weight) << ','
               << num(a.xi) << '\n';
        }
    }
}

void write_cdf_csv(std::ostream& os, const Grid1D& grid, const EffectiveState& state)
{
    os << "t,x_cell,xi,f\n";
    std::vector<double> knots;
    for (std::size_t i = 0; i < state.nu.size(); ++i)
    {
        knots.clear();
        for (auto const& a : state.nu[i].atoms())
            knots.push_back(a.xi);
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
        CDFGrid const f = cdf(state.nu[i], knots);
        for (std::size_t k = 0; k < knots.size(); ++k)
            os << num(state.t) << ',' << num(grid.center(i)) << ',' << num(f.xi[k]) << ',' << num(f.f[k]) << '\n';
    }
}

void write_energy_csv(std::ostream& os, std::span<const EnergyLedgerRow> rows)
{
    os << "t,E,kinetic,potential,coupling,gradient,dissipation_visc,dissipation_c,defect\n";
    for (auto const& r : rows)
    {
        auto const& e = r.energy;
        os << num(r.t) << ',' << num(e.total()) << ',' << num(e.kinetic) << ',' << num(e.potential_w) << ','
           << num(e.coupling) << ',' << num(e.gradient) << ',' << num(e.dissipation_visc) << ','
           << num(e.dissipation_c) << ',' << num(e.defect()) << '\n';
    }
}

void write_monitors_csv(std::ostream& os, std::span<const MonitorRow> rows)
{
    os << "t,dt,mass,c_integral,c_reference,rho_min,rho_max,normalization_defect,continuity_residual,max_atoms\n";
    for (auto const& r : rows)
    {
        os << num(r.t) << ',' << num(r.dt) << ',' << num(r.mass) << ',' << num(r.c_integral) << ','
           << num(r.c_reference) << ',' << num(r.rho_min) << ',' << num(r.rho_max) << ','
           << num(r.normalization_defect) << ',' << num(r.continuity_residual) << ',' << r.max_atoms << '\n';
    }
}

void write_runtimes_csv(std::ostream& os, const ConvergenceReport& report)
{
    os << "run,n,steps,runtime_s\n";
    os << "effective,," << report.effective.steps << ',' << num(report.effective.runtime_s) << '\n';
    for (auto const& r : report.rows)
        os << "pnsk," << r.n << ',' << r.steps << ',' << num(r.runtime_s) << '\n';
}

void write_convergence_report(std::ostream& os, const ConvergenceReport& report, const RunConfig& config)
{
    ordered_json doc;
    doc["schema_version"] = ConvergenceReport::schema_version;
    doc["kind"] = "convergence";
    doc["config"] = ordered_json::parse(dump_config(config));
    doc["exponents"] = exponents_json(report.exponents);
    doc["window_h"] = report.window_h;
    doc["observables"] = report.observables;

    auto const& e = report.effective;
    doc["effective"] = {
        {"ok", e.ok},
        {"error", e.error},
        {"E0", jnum(e.e0)},
        {"steps", e.steps},
        {"clamp_events", e.clamp_events},
        {"max_normalization_defect", jnum(e.max_normalization_defect)},
        {"max_atoms", e.max_atoms},
    };

    ordered_json rows = ordered_json::array();
    for (auto const& r : report.rows)
    {
        ordered_json distances = ordered_json::object();
        for (auto const& name : report.observables)
        {
            auto it = r.distance.find(name);
            distances[name] = it == r.distance.end() ? ordered_json(nullptr) : jnum(it->second);
        }
        rows.push_back({
            {"n", r.n},
            {"ok", r.ok},
            {"error", r.error},
            {"weak_distance", distances},
            {"evf_gap", r.ok ? jnum(r.evf_gap) : ordered_json(nullptr)},
            {"monitors",
             {{"E0", jnum(r.e0)},
              {"rho_Linf_L_gamma_tilde", jnum(r.rho_linf_l_gamma_tilde)},
              {"rho_L_gamma_tilde_plus_theta", jnum(r.rho_l_gamma_tilde_plus_theta)},
              {"peff_L_delta", jnum(r.peff_l_delta)},
              {"max_mass_drift", jnum(r.max_mass_drift)},
              {"rho_min", jnum(r.rho_min)}}},
            {"steps", r.steps},
        });
    }
    doc["rows"] = rows;
    os << doc.dump(2) << '\n';
}

//---------------------------------------------------------------------------//
namespace {

template<class Traj>
RunSummary common(const Traj& traj, std::string model)
{
    RunSummary s;
    s.model = std::move(model);
    s.steps = traj.steps;
    s.max_dt = traj.max_dt;
    s.max_mass_drift = traj.max_mass_drift;
    s.e0 = traj.energy.empty() ? 0.0 : traj.energy.front().energy.e0;
    for (auto const& r : traj.energy)
        s.max_abs_energy_defect = std::max(s.max_abs_energy_defect, std::abs(r.energy.defect()));
    s.rho_min = traj.monitors.front().rho_min;
    for (auto const& m : traj.monitors)
    {
        s.rho_min = std::min(s.rho_min, m.rho_min);
        s.max_normalization_defect = std::max(s.max_normalization_defect, m.normalization_defect);
        s.max_atoms = std::max(s.max_atoms, m.max_atoms);
    }
    s.exponents = traj.norms.exponents();
    s.rho_linf_l_gamma_tilde = traj.norms.rho_linf_l_gamma_tilde();
    s.rho_l_gamma_tilde_plus_theta = traj.norms.rho_l_gamma_tilde_plus_theta();
    s.peff_l_delta = traj.norms.peff_l_delta();
    return s;
}

}  // namespace

RunSummary summarize(const PnskTrajectory& traj)
{
    return common(traj, "pnsk");
}

RunSummary summarize(const EffectiveTrajectory& traj)
{
    RunSummary s = common(traj, "effective");
    s.clamp_events = traj.clamp_events;
    return s;
}

void write_run_report(std::ostream& os, const RunSummary& s, const RunConfig& config)
{
    ordered_json doc;
    doc["schema_version"] = ConvergenceReport::schema_version;
    doc["kind"] = s.model;
    doc["config"] = ordered_json::parse(dump_config(config));
    doc["exponents"] = exponents_json(s.exponents);
    doc["summary"] = {
        {"steps", s.steps},
        {"max_dt", jnum(s.max_dt)},
        {"max_mass_drift", jnum(s.max_mass_drift)},
        {"E0", jnum(s.e0)},
        {"max_abs_energy_defect", jnum(s.max_abs_energy_defect)},
        {"rho_min", jnum(s.rho_min)},
        {"rho_Linf_L_gamma_tilde", jnum(s.rho_linf_l_gamma_tilde)},
        {"rho_L_gamma_tilde_plus_theta", jnum(s.rho_l_gamma_tilde_plus_theta)},
        {"peff_L_delta", jnum(s.peff_l_delta)},
    };
    if (s.model == "effective")
    {
        doc["summary"]["clamp_events"] = s.clamp_events;
        doc["summary"]["max_normalization_defect"] = jnum(s.max_normalization_defect);
        doc["summary"]["max_atoms"] = s.max_atoms;
    }
    os << doc.dump(2) << '\n';
}

}  // namespace spraylab
