#pragma once

#include <span>
#include <vector>

#include "spraylab/errors.hpp"
#include "spraylab/grid.hpp"
#include "spraylab/hydro.hpp"
#include "spraylab/monitors.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

/// Abort raised when a run produces non-finite fields; keeps the last finite state.
class RunAborted : public BlowUp
{
  public:
    RunAborted(const std::string& what, FluidState last_good)
        : BlowUp(what), last_good_(std::move(last_good))
    {
    }

    const FluidState& last_good() const { return last_good_; }

  private:
    FluidState last_good_;
};

/// Controls shared by the detailed and effective runners.
struct RunOptions
{
    /// Keep every step in the trajectory (needed for space-time residuals).
    bool record_every_step{false};
    /// Use this step instead of the adaptive one when positive.
    double fixed_dt{0};
};

struct PnskTrajectory
{
    std::vector<FluidState> snapshots;
    std::vector<double> mass;  ///< per snapshot
    std::vector<EnergyLedgerRow> energy;  ///< per step, starting at t0
    std::vector<MonitorRow> monitors;  ///< per step, starting at t0
    NormMonitor norms;
    double max_dt{0};
    double max_mass_drift{0};  ///< max relative |mass(t) - mass(0)| over all steps
    std::size_t steps{0};
};

/// Donor-cell update of the continuity equation. Throws StepRejected when
/// the outflow Courant number of some cell exceeds 1.
Field step_continuity(const Grid1D& grid, const FluidState& state, double dt);

/// continuity -> momentum (pressure Peff(rho_new)) -> order parameter.
FluidState step_pnsk(const Grid1D& grid,
                     const FluidState& state,
                     const PressureLaw& law,
                     const Params& params,
                     double dt);

/// Advance to each output time exactly, recording snapshots and diagnostics.
PnskTrajectory run_pnsk(const Grid1D& grid,
                        const FluidState& init,
                        const PressureLaw& law,
                        const Params& params,
                        std::span<const double> output_times,
                        const RunOptions& options = {});

/// Exact mean relaxation m_rho + (m_c0 - m_rho) exp(-(alpha/beta) t).
double c_mean_reference(double m_c0, double m_rho, const Params& params, double t);

/// Max outflow Courant number over the cells, max_i (u_{i+1}^+ + u_i^-) dt / dx.
double outflow_courant(const Grid1D& grid, std::span<const double> u, double dt);

}  // namespace spraylab
