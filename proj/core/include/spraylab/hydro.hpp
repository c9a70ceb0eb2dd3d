#pragma once

#include <span>
#include <vector>

#include "spraylab/grid.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

//---------------------------------------------------------------------------//
/// Physical coefficients and numerical controls shared by both solvers.
struct Params
{
    // Physical
    double mu{1};
    double lambda{1};
    double kappa{1};
    double alpha{1};
    double beta{1};

    // Numerical
    double cfl{0.5};
    double dt_max{1e-3};
    double t_end{0.25};
    double renorm_tol{1e-6};
    /// Relative to the support width of each cell measure.
    double atom_merge_eps{1e-6};
    std::size_t max_atoms{64};
    bool compression{true};

    /// lambda + 2 mu, the coefficient of the 1D viscous term.
    double viscosity() const { return lambda + 2 * mu; }

    /// Throws ValidationError naming the first offending field.
    void validate() const;
};

/// Floor applied to face densities when converting momentum to velocity.
inline constexpr double vacuum_floor = 1e-12;

//---------------------------------------------------------------------------//
/// Inputs of the momentum substep. Densities are before/after the transport
/// substep of the same step; `pressure` is Peff(rho_new) or the averaged
/// pressure of the effective model, at cell centers.
struct MomentumInput
{
    std::span<const double> rho_old;
    std::span<const double> rho_new;
    std::span<const double> u;
    std::span<const double> c;
    std::span<const double> pressure;
};

/*!
 * Advance face velocities by one step.
 *
 * Face momenta rho_f u are advected conservatively with donor-cell fluxes
 * consistent with the continuity update, pushed by -grad(pressure) and
 * alpha rho_f grad(c) explicitly, and diffused implicitly by
 * (lambda + 2 mu) u_xx with u = 0 on the walls.
 */
Field step_momentum(const Grid1D& grid, const MomentumInput& in, const Params& params, double dt);

/// Backward-Euler step of beta c_t - kappa c_xx + alpha (c - rho) = 0 with Neumann walls.
Field step_order_parameter(const Grid1D& grid,
                           std::span<const double> rho,
                           std::span<const double> c_old,
                           const Params& params,
                           double dt);

/// Donor-cell mass fluxes rho_upwind u at the faces (zero on the walls).
Field donor_cell_flux(const Grid1D& grid, std::span<const double> rho, std::span<const double> u);

/// Hyperbolic time step: min(dt_max, cfl dx / (max|u| + max sqrt(max(Peff'(rho), 0)))).
double stable_dt(const Grid1D& grid,
                 std::span<const double> rho,
                 std::span<const double> u,
                 const PressureLaw& law,
                 const Params& params);

//---------------------------------------------------------------------------//
struct EnergyReport
{
    double kinetic{0};
    double potential_w{0};
    double coupling{0};
    double gradient{0};
    double dissipation_visc{0};
    double dissipation_c{0};
    double e0{0};

    double total() const { return kinetic + potential_w + coupling + gradient; }
    /// E(t) + accumulated dissipation - E0; vanishes for an exactly dissipative evolution.
    double defect() const { return total() + dissipation_visc + dissipation_c - e0; }
};

/// Energy parts of a state; dissipation fields are left at zero.
EnergyReport total_energy(const Grid1D& grid,
                          const FluidState& state,
                          const PressureLaw& law,
                          const Params& params);

/// Viscous dissipation rate int (lambda + 2 mu) |u_x|^2 dx.
double viscous_dissipation_rate(const Grid1D& grid, std::span<const double> u, const Params& params);

/// Order-parameter dissipation rate beta int |(c_new - c_old)/dt|^2 dx.
double order_dissipation_rate(const Grid1D& grid,
                              std::span<const double> c_old,
                              std::span<const double> c_new,
                              const Params& params,
                              double dt);

struct EnergyLedgerRow
{
    double t{0};
    EnergyReport energy;
};

/// Accumulates energy and dissipation step by step.
class EnergyBudget
{
  public:
    EnergyBudget(const Grid1D& grid, const PressureLaw& law, const Params& params, const FluidState& initial);

    /// Record the step prev -> next (next.t > prev.t).
    void add_step(const FluidState& prev, const FluidState& next);

    const std::vector<EnergyLedgerRow>& rows() const { return rows_; }
    double e0() const { return e0_; }
    double max_abs_defect() const;

  private:
    Grid1D grid_;
    PressureLaw law_;
    Params params_;
    double e0_;
    double visc_{0};
    double order_{0};
    std::vector<EnergyLedgerRow> rows_;
};

/// Ledger for a trajectory of consecutive steps (at least 2 states).
std::vector<EnergyLedgerRow> energy_budget(const Grid1D& grid,
                                           std::span<const FluidState> trajectory,
                                           const PressureLaw& law,
                                           const Params& params);

}  // namespace spraylab
