#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace spraylab {

enum class LawKind
{
    isentropic,
    vdw_cubic,
    tabulated,
};

enum class PressureQuantity
{
    P,      ///< pressure P(r)
    dP,     ///< P'(r)
    Peff,   ///< artificial pressure P(r) + (alpha/2) r^2
    dPeff,  ///< P'(r) + alpha r
};

std::string_view to_string(LawKind kind);
LawKind law_kind_from_string(std::string_view name);

namespace detail {
struct PressureTable;
}

//---------------------------------------------------------------------------//
/*!
 * Admissible pressure law with growth rate gamma, plus the coupling
 * coefficient alpha that defines the artificial pressure.
 *
 * Three kinds are supported:
 *  - isentropic: P(r) = a r^gamma, coefficients {a}
 *  - vdw_cubic:  P(r) = Phat(r/s) - Phat(0) with
 *                Phat(x) = (x-x0)^3 - k (x-x0)^2 + p0, coefficients {s, x0, k, p0}
 *  - tabulated:  monotone cubic (PCHIP) through (r_k, P_k), r_0 = 0, extended
 *                beyond the last knot by the tail P_M + (p_inf/gamma)(r^gamma - r_M^gamma)
 *
 * Instances are immutable and cheap to copy; the invariants (P(0) = 0,
 * P >= 0, P'/r^(gamma-1) -> p_inf) are checked on construction.
 */
class PressureLaw
{
  public:
    static PressureLaw isentropic(double gamma, double coefficient, double alpha);
    static PressureLaw vdw_cubic(std::span<const double> coefficients, double alpha);
    /// The cubic drawn in the left panel of the reference figure: {3.234, 0.55, 1, 0.468}.
    static PressureLaw reference_cubic(double alpha);
    static PressureLaw tabulated(std::vector<double> densities,
                                 std::vector<double> pressures,
                                 double gamma,
                                 double p_inf,
                                 double alpha);

    LawKind kind() const { return kind_; }
    std::span<const double> coefficients() const { return coefficients_; }
    double gamma() const { return gamma_; }
    /// max{2, gamma}: the integrability exponent of the density.
    double gamma_tilde() const;
    double p_inf() const { return p_inf_; }
    double alpha() const { return alpha_; }

    /// Same law with a different coupling coefficient.
    PressureLaw with_alpha(double alpha) const;

    double eval(double r, PressureQuantity which) const;
    double pressure(double r) const { return eval(r, PressureQuantity::P); }
    double dpressure(double r) const { return eval(r, PressureQuantity::dP); }
    double peff(double r) const { return eval(r, PressureQuantity::Peff); }
    double dpeff(double r) const { return eval(r, PressureQuantity::dPeff); }

    /// Pressure potential W(r) = r * int_1^r P(z)/z^2 dz (closed form when available).
    double potential(double r) const;
    /// W'(r) = int_1^r P(z)/z^2 dz + P(r)/r.
    double potential_derivative(double r) const;
    /// W(r) by adaptive quadrature regardless of law kind.
    double potential_by_quadrature(double r) const;

  private:
    PressureLaw() = default;
    void validate() const;
    double tabulated_pressure(double r, bool derivative) const;
    double potential_integral(double r) const;

    LawKind kind_{LawKind::isentropic};
    std::vector<double> coefficients_;
    // Power-series coefficients c_1..c_3 of the shifted cubic in r.
    double c1_{0}, c2_{0}, c3_{0};
    double gamma_{2};
    double p_inf_{1};
    double alpha_{1};
    std::shared_ptr<const detail::PressureTable> table_;
};

struct SpinodalInfo
{
    double r1{0};
    double r2{0};
    bool exists{false};
};

/// Locate the decreasing interval (r1, r2) of P by scanning P' on [0, r_scan].
/// r_scan <= 0 selects the default (10 r2, or 50 for monotone laws).
SpinodalInfo spinodal(const PressureLaw& law, double r_scan = 0);

/// Smallest alpha >= 0 for which Peff is non-decreasing: sup_r (-P'(r)/r), clamped at 0.
double monotonization_alpha(const PressureLaw& law, double r_scan = 0);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// Throws NumericError if the recursion depth is exhausted.
template<class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48);

}  // namespace spraylab

#include "spraylab/detail/quadrature.hpp"
