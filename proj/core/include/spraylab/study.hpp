#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spraylab/config.hpp"
#include "spraylab/monitors.hpp"

namespace spraylab {

/// One rung of the n-ladder.
struct ConvergenceRow
{
    std::size_t n{0};
    bool ok{false};
    std::string error;
    /// Weak distance to the effective run per observable name.
    std::map<std::string, double> distance;
    double evf_gap{0};
    double e0{0};
    double rho_linf_l_gamma_tilde{0};
    double rho_l_gamma_tilde_plus_theta{0};
    double peff_l_delta{0};
    double max_mass_drift{0};
    double rho_min{0};
    std::size_t steps{0};
    double runtime_s{0};
};

/// Summary of the single effective run every row is compared against.
struct EffectiveSummary
{
    bool ok{false};
    std::string error;
    double e0{0};
    std::size_t steps{0};
    std::size_t clamp_events{0};
    double max_normalization_defect{0};
    std::size_t max_atoms{0};
    double runtime_s{0};
};

struct ConvergenceReport
{
    static constexpr int schema_version = 1;

    NormExponents exponents;
    double window_h{0};
    std::vector<std::string> observables;
    std::vector<ConvergenceRow> rows;
    EffectiveSummary effective;
};

/*!
 * Run the detailed model for every n of the ladder and the effective model
 * once, then compare them.
 *
 * Trajectories run on up to `threads` workers; the report is assembled
 * afterwards in ladder order, so it does not depend on scheduling. A failed
 * run marks its row (or, for the effective run, every row) with the error.
 */
ConvergenceReport run_convergence(const RunConfig& config, unsigned threads = 1);

}  // namespace spraylab
