#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spraylab/effective.hpp"
#include "spraylab/grid.hpp"
#include "spraylab/hydro.hpp"
#include "spraylab/measure.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

//---------------------------------------------------------------------------//
// OSCILLATING INITIAL DATA
//---------------------------------------------------------------------------//

enum class Profile
{
    blocks,
    smoothed,
};

/*!
 * Periodic liquid/vapor pattern: [0, L] is split into `n_interfaces` equal
 * macro-blocks, each made of a liquid part of fraction `theta` followed by
 * vapor.
 */
struct OscillationSpec
{
    std::size_t n_interfaces{1};
    double r_vap{0.2};
    double r_liq{2.0};
    double theta{0.5};
    Profile profile{Profile::blocks};
    /// tanh ramp width of the smoothed profile.
    double width{0};

    /// Throws ValidationError naming the offending field.
    void validate() const;
    /// theta r_liq + (1 - theta) r_vap
    double mean_density() const { return theta * r_liq + (1 - theta) * r_vap; }
};

/// Density field of the pattern; throws DomainError if 2 n_interfaces > n_cells.
Field gen_oscillating_density(const Grid1D& grid, const OscillationSpec& spec);

/// Weak-* limit of the blocks pattern: (1 - theta) at r_vap plus theta at r_liq.
AtomicMeasure limit_measure(double theta, double r_vap, double r_liq);

//---------------------------------------------------------------------------//
// WEAK METRICS
//---------------------------------------------------------------------------//

/// Scalar observable b with its derivative.
struct Observable
{
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

/// b(z) = z
Observable identity_observable();
/// b(z) = z / (1 + z)
Observable bounded_observable();
/// b(z) = z^2 / 2
Observable half_square_observable();
/// g(z) = (1 - (z/R)^2)^2 on [0, R), 0 beyond.
Observable compact_observable(double radius);

/// ||mollify(a - b, window_h)||_L2. Throws SizeError if the fields do not fit the grid.
double weak_distance(const Grid1D& grid,
                     std::span<const double> a,
                     std::span<const double> b,
                     double window_h);

/// Root-mean-square of weak_distance over paired snapshots.
double weak_distance(const Grid1D& grid,
                     std::span<const Field> a,
                     std::span<const Field> b,
                     double window_h);

/// Per-snapshot fields <nu, g> of an effective trajectory.
std::vector<Field> measure_moments(std::span<const EffectiveState> snapshots,
                                   const std::function<double(double)>& g);
/// Per-snapshot fields g(rho) of a detailed trajectory.
std::vector<Field> density_observable(std::span<const FluidState> snapshots,
                                      const std::function<double(double)>& g);

/*!
 * Gap in the effective viscous flux identity.
 *
 * Compares (Peff(rho_n) - (lambda + 2 mu) u_x) b(rho_n) from the detailed run
 * with (pbar - (lambda + 2 mu) u_x) <nu, b> from the effective run, through
 * the snapshot-RMS weak distance. Snapshot times must agree.
 */
double evf_gap(const Grid1D& grid,
               std::span<const FluidState> detailed,
               std::span<const EffectiveState> effective,
               const PressureLaw& law,
               const Params& params,
               const Observable& b,
               double window_h);

//---------------------------------------------------------------------------//
// WEAK-FORM RESIDUALS
//---------------------------------------------------------------------------//

enum class Equation
{
    continuity,
    momentum,
    parabolic,
    renormalized,
    kinetic,
    cdf,
};

std::string_view to_string(Equation which);
/// Throws ValidationError for unknown names.
Equation equation_from_string(std::string_view name);

/// Smooth test function phi(t, x) with its partial derivatives.
struct TestFunction
{
    std::string name;
    std::function<double(double, double)> value;
    std::function<double(double, double)> dt;
    std::function<double(double, double)> dx;
};

/// Three fixed test functions vanishing on both walls.
std::vector<TestFunction> standard_test_functions(double length);

/*!
 * Options of weak_residual.
 *
 * The kinetic test function is psi = phi(t, x) g(xi). The cdf form uses
 * phi(t, x) h(xi) with h = -g' for a g that vanishes beyond some radius;
 * with the same g in both slots the two residuals agree.
 */
struct ResidualOptions
{
    /// b of the renormalized equation.
    Observable renormalization = half_square_observable();
    /// g of the kinetic form.
    Observable kinetic_profile = bounded_observable();
    /// g of the cdf form; must have compact support.
    Observable cdf_profile = compact_observable(8.0);
};

/*!
 * Defect of a space-time integral identity along a trajectory.
 *
 * Identities are taken on [t_0, t_K] with the end-time terms, e.g. for
 * continuity
 *   int int rho phi_t + rho u phi_x - [int rho phi]_{t_0}^{t_K}.
 * Space integrals use the midpoint rule at cell centers (velocities
 * averaged to centers), time integrals the trapezoid rule over consecutive
 * snapshots, so the trajectory should hold every step. A detailed state
 * enters the kinetic form as the Dirac measure at rho.
 *
 * Throws DomainError for the cdf form on a detailed trajectory (there is no
 * distribution to integrate against) and for fewer than two snapshots.
 */
double weak_residual(const Grid1D& grid,
                     std::span<const FluidState> trajectory,
                     const PressureLaw& law,
                     const Params& params,
                     Equation which,
                     const TestFunction& phi,
                     const ResidualOptions& options = {});

double weak_residual(const Grid1D& grid,
                     std::span<const EffectiveState> trajectory,
                     const PressureLaw& law,
                     const Params& params,
                     Equation which,
                     const TestFunction& phi,
                     const ResidualOptions& options = {});

}  // namespace spraylab
