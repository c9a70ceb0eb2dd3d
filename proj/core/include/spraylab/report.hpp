#pragma once

#include <ostream>
#include <span>
#include <string>

#include "spraylab/config.hpp"
#include "spraylab/effective.hpp"
#include "spraylab/pnsk.hpp"
#include "spraylab/study.hpp"

namespace spraylab {

/*!
 * \file
 * Persistence of run artifacts. Numbers are written in shortest round-trip
 * form, so identical runs give byte-identical files.
 */

/// Columns t, x, rho, u_center, c.
void write_fields_csv(std::ostream& os, const Grid1D& grid, const FluidState& state);
/// Columns t, x_cell, atom, weight, xi.
void write_measure_csv(std::ostream& os, const Grid1D& grid, const EffectiveState& state);
/// Columns t, x_cell, xi, f with the atom positions of each cell as knots.
void write_cdf_csv(std::ostream& os, const Grid1D& grid, const EffectiveState& state);
/// Columns t, E, kinetic, potential, coupling, gradient, dissipation_visc, dissipation_c, defect.
void write_energy_csv(std::ostream& os, std::span<const EnergyLedgerRow> rows);
void write_monitors_csv(std::ostream& os, std::span<const MonitorRow> rows);
/// Wall-clock times per run; kept out of report.json so that it stays reproducible.
void write_runtimes_csv(std::ostream& os, const ConvergenceReport& report);

/// Schema-versioned report of a convergence study (no timings).
void write_convergence_report(std::ostream& os, const ConvergenceReport& report, const RunConfig& config);

/// Scalars of a single run for report.json.
struct RunSummary
{
    std::string model;  ///< "pnsk" or "effective"
    std::size_t steps{0};
    double max_dt{0};
    double max_mass_drift{0};
    double e0{0};
    double max_abs_energy_defect{0};
    double rho_min{0};
    NormExponents exponents;
    double rho_linf_l_gamma_tilde{0};
    double rho_l_gamma_tilde_plus_theta{0};
    double peff_l_delta{0};
    std::size_t clamp_events{0};
    double max_normalization_defect{0};
    std::size_t max_atoms{1};
};

RunSummary summarize(const PnskTrajectory& traj);
RunSummary summarize(const EffectiveTrajectory& traj);

void write_run_report(std::ostream& os, const RunSummary& summary, const RunConfig& config);

}  // namespace spraylab
