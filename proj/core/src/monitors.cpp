#include "spraylab/monitors.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

NormExponents NormExponents::from_gamma(double gamma)
{
    NormExponents e;
    e.gamma_tilde = std::max(2.0, gamma);
    e.theta = std::min((2 * e.gamma_tilde - 3) / 3, 1.0);
    e.delta = (e.gamma_tilde + e.theta) / e.gamma_tilde;
    return e;
}

void NormMonitor::observe(const Grid1D& grid, std::span<const double> rho)
{
    double sum = 0;
    for (double r : rho)
        sum += std::pow(r, exponents_.gamma_tilde);
    linf_ = std::max(linf_, std::pow(sum * grid.dx(), 1 / exponents_.gamma_tilde));
}

void NormMonitor::accumulate(const Grid1D& grid,
                             std::span<const double> rho,
                             std::span<const double> peff,
                             double dt)
{
    double const q = exponents_.gamma_tilde + exponents_.theta;
    double rho_sum = 0;
    double peff_sum = 0;
    for (std::size_t i = 0; i < rho.size(); ++i)
    {
        rho_sum += std::pow(rho[i], q);
        peff_sum += std::pow(std::abs(peff[i]), exponents_.delta);
    }
    rho_power_integral_ += dt * grid.dx() * rho_sum;
    peff_power_integral_ += dt * grid.dx() * peff_sum;
}

double NormMonitor::rho_l_gamma_tilde_plus_theta() const
{
    return std::pow(rho_power_integral_, 1 / (exponents_.gamma_tilde + exponents_.theta));
}

double NormMonitor::peff_l_delta() const
{
    return std::pow(peff_power_integral_, 1 / exponents_.delta);
}

}  // namespace spraylab
