#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spraylab/effective.hpp"
#include "spraylab/grid.hpp"
#include "spraylab/hydro.hpp"
#include "spraylab/lab.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

/// Law block of the configuration; turned into a PressureLaw by law().
struct PressureSpec
{
    LawKind kind{LawKind::isentropic};
    std::vector<double> coefficients{1.0};
    double gamma{1.4};
    double p_inf{1.0};
    /// Tabulated laws only.
    std::vector<double> densities;
    std::vector<double> pressures;
};

enum class VelocityKind
{
    zero,
    sine,
    /// Random combination of the first `modes` sine modes, drawn from the seed.
    noise,
};

struct VelocitySpec
{
    VelocityKind kind{VelocityKind::zero};
    double amplitude{0};
    int mode{1};
    int modes{4};
};

enum class OrderKind
{
    /// Constant equal to the mean density of the oscillation.
    mean,
    constant,
};

struct OrderSpec
{
    OrderKind kind{OrderKind::mean};
    double value{1};
};

enum class InitialMeasure
{
    /// Two atoms at the vapor and liquid densities.
    limit,
    /// One atom per cell at the detailed initial density.
    dirac,
};

/*!
 * Validated run configuration.
 *
 * JSON sections and defaults:
 *  - domain:   L = 1, n_cells = 512
 *  - physics:  mu = lambda = kappa = alpha = beta = 1
 *  - pressure: kind = isentropic, coefficients = [1], gamma = 1.4, p_inf = 1
 *  - initial:  oscillation (n_interfaces 4, r_vap 0.2, r_liq 2, theta 0.5,
 *              profile blocks), measure limit, u0 zero, c0 mean
 *  - numerics: cfl 0.5, dt_max 1e-3, t_end 0.25, output_times = quarters of
 *              t_end, max_atoms 64, merge_eps 1e-6, renorm_tol 1e-6,
 *              window_h = L/16, fixed_dt 0 (adaptive), compression true
 *  - study:    n_ladder [4, 8, 16, 32], observables [xi, peff, bounded]
 *  - seed:     0
 */
struct RunConfig
{
    double length{1};
    std::size_t n_cells{512};
    Params params;
    PressureSpec pressure;
    OscillationSpec oscillation;
    InitialMeasure measure{InitialMeasure::limit};
    VelocitySpec u0;
    OrderSpec c0;
    std::vector<double> output_times;
    double window_h{0};
    double fixed_dt{0};
    std::vector<std::size_t> n_ladder{4, 8, 16, 32};
    std::vector<std::string> observables{"xi", "peff", "bounded"};
    std::uint64_t seed{0};

    Grid1D grid() const { return Grid1D(n_cells, length); }
    PressureLaw law() const;

    /// Throws ValidationError naming the offending key.
    void validate() const;
};

/// Read and validate a JSON configuration. Syntax errors report line and column.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text, std::string_view source = "<config>");

/// The configuration with every default filled in, as JSON text.
std::string dump_config(const RunConfig& config, int indent = 2);

/// Initial velocity on the faces.
Field initial_velocity(const RunConfig& config, const Grid1D& grid);
/// Initial order parameter at the centers.
Field initial_order_parameter(const RunConfig& config, const Grid1D& grid);
/// Detailed initial state with the oscillation refined to `n_interfaces`.
FluidState detailed_initial_state(const RunConfig& config, std::size_t n_interfaces);
/// Initial state of the effective model.
EffectiveState effective_initial_state(const RunConfig& config);

}  // namespace spraylab
