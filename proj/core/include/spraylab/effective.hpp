#pragma once

#include <span>
#include <vector>

#include "spraylab/grid.hpp"
#include "spraylab/hydro.hpp"
#include "spraylab/measure.hpp"
#include "spraylab/monitors.hpp"
#include "spraylab/pnsk.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

//---------------------------------------------------------------------------//
/*!
 * State of the homogenized model: one atomic measure per cell, face
 * velocities and the order parameter. `rho` and `pbar` cache the closures
 * <nu, xi> and <nu, Peff>; call refresh() after modifying `nu`.
 */
struct EffectiveState
{
    MeasureField nu;
    Field u;
    Field c;
    double t{0};
    Field rho;
    Field pbar;

    void refresh(const PressureLaw& law);
    /// Sizes, no-slip, non-empty normalized cells and cache consistency.
    void validate(const Grid1D& grid, const Params& params) const;
    /// Hydrodynamic view (rho, u, c, t).
    FluidState fluid() const;
};

/// Single atom per cell at the density of `fluid`.
EffectiveState dirac_state(const FluidState& fluid, const PressureLaw& law);
/// The same measure in every cell.
EffectiveState uniform_state(const Grid1D& grid,
                             const AtomicMeasure& m,
                             std::span<const double> u,
                             std::span<const double> c,
                             const PressureLaw& law);

//---------------------------------------------------------------------------//
/// Donor-cell transport of measure mass; throws StepRejected above unit Courant number.
MeasureField advect_measure(const Grid1D& grid,
                            const MeasureField& nu,
                            std::span<const double> u,
                            double dt);

/// Outcome of the reaction substep in one cell.
struct ReactionResult
{
    AtomicMeasure measure;
    double defect{0};  ///< total weight - 1 before renormalization
    std::size_t clamped{0};  ///< atoms whose position overshot below 0
};

/// Characteristic speeds d(xi)/dt = (Q(xi) - divu) xi at the current atoms.
std::vector<double> xi_velocity(const AtomicMeasure& m,
                                double divu,
                                const PressureLaw& law,
                                const Params& params);

/*!
 * Move atoms along xi' = (Q - divu) xi, w' = -(Q - divu) w for one step.
 *
 * The mean pressure inside Q is frozen at the start of the step (normalized
 * by the incoming total weight, so that sum w Q = 0). Both equations are
 * advanced with Heun's method, then weights are scaled to sum 1. Atoms at
 * xi = 0 stay there; a negative overshoot is clamped to 0 and counted.
 */
ReactionResult react_measure(const AtomicMeasure& m,
                             double divu,
                             const PressureLaw& law,
                             const Params& params,
                             double dt);

/// Largest stable step: hydrodynamic CFL over all atoms and cfl / max |Q - divu|.
double effective_stable_dt(const Grid1D& grid,
                           const EffectiveState& state,
                           const PressureLaw& law,
                           const Params& params);

/// Per-step diagnostics of step_effective.
struct EffectiveStepInfo
{
    double max_defect{0};
    std::size_t clamped{0};
    double continuity_residual{0};
};

/// advect -> react -> closures -> momentum (pressure pbar) -> order parameter.
EffectiveState step_effective(const Grid1D& grid,
                              const EffectiveState& state,
                              const PressureLaw& law,
                              const Params& params,
                              double dt,
                              EffectiveStepInfo* info = nullptr);

/// Energy with the potential averaged over the measure, <nu, W>.
EnergyReport effective_energy(const Grid1D& grid,
                              const EffectiveState& state,
                              const PressureLaw& law,
                              const Params& params);

struct EffectiveTrajectory
{
    std::vector<EffectiveState> snapshots;
    std::vector<double> mass;
    std::vector<EnergyLedgerRow> energy;
    std::vector<MonitorRow> monitors;
    NormMonitor norms;
    double max_dt{0};
    double max_mass_drift{0};
    std::size_t clamp_events{0};
    std::size_t steps{0};
};

EffectiveTrajectory run_effective(const Grid1D& grid,
                                  const EffectiveState& init,
                                  const PressureLaw& law,
                                  const Params& params,
                                  std::span<const double> output_times,
                                  const RunOptions& options = {});

}  // namespace spraylab
