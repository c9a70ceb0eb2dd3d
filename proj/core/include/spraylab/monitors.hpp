#pragma once

#include <span>

#include "spraylab/grid.hpp"

namespace spraylab {

/// Integrability exponents of the improved pressure estimate.
struct NormExponents
{
    double gamma_tilde{2};
    double theta{1.0 / 3.0};  ///< min{(2 gamma_tilde - 3)/3, 1}
    double delta{7.0 / 6.0};  ///< (gamma_tilde + theta) / gamma_tilde

    static NormExponents from_gamma(double gamma);
};

/*!
 * Running space-time norms of a density history:
 *  - sup_t ||rho(t)||_{L^gamma_tilde}
 *  - ||rho||_{L^(gamma_tilde + theta)(Omega_T)}
 *  - ||Peff(rho)||_{L^delta(Omega_T)}
 * Time integrals use the step lengths passed to accumulate().
 */
class NormMonitor
{
  public:
    NormMonitor() = default;
    explicit NormMonitor(double gamma) : exponents_(NormExponents::from_gamma(gamma)) {}

    const NormExponents& exponents() const { return exponents_; }

    void observe(const Grid1D& grid, std::span<const double> rho);
    void accumulate(const Grid1D& grid,
                    std::span<const double> rho,
                    std::span<const double> peff,
                    double dt);

    double rho_linf_l_gamma_tilde() const { return linf_; }
    double rho_l_gamma_tilde_plus_theta() const;
    double peff_l_delta() const;

  private:
    NormExponents exponents_{};
    double linf_{0};
    double rho_power_integral_{0};
    double peff_power_integral_{0};
};

/// Per-step scalar diagnostics.
struct MonitorRow
{
    double t{0};
    double dt{0};
    double mass{0};
    double c_integral{0};
    double c_reference{0};
    double rho_min{0};
    double rho_max{0};
    /// Effective runs only: max pre-renormalization defect |sum w - 1| over cells.
    double normalization_defect{0};
    /// Effective runs only: L2 norm of (rho_new - rho_old)/dt + div(rho_up u).
    double continuity_residual{0};
    /// Effective runs only: largest atom count in any cell.
    std::size_t max_atoms{1};
};

}  // namespace spraylab
