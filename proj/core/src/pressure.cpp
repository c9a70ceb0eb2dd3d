#include "spraylab/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

// The boost 1.83 pchip header calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "spraylab/errors.hpp"

namespace spraylab {

namespace detail {
struct PressureTable
{
    std::vector<double> r;
    std::vector<double> p;
    boost::math::interpolators::pchip<std::vector<double>> spline;
};
}  // namespace detail

namespace {

constexpr double quadrature_tol = 1e-10;

std::vector<double> copy_span(std::span<const double> s)
{
    return {s.begin(), s.end()};
}

}  // namespace

std::string_view to_string(LawKind kind)
{
    switch (kind)
    {
        case LawKind::isentropic:
            return "isentropic";
        case LawKind::vdw_cubic:
            return "vdw-cubic";
        case LawKind::tabulated:
            return "tabulated";
    }
    return "unknown";
}

LawKind law_kind_from_string(std::string_view name)
{
    if (name == "isentropic")
        return LawKind::isentropic;
    if (name == "vdw-cubic")
        return LawKind::vdw_cubic;
    if (name == "tabulated")
        return LawKind::tabulated;
    throw ValidationError("unknown pressure law kind '" + std::string(name) + "'");
}

//---------------------------------------------------------------------------//
PressureLaw PressureLaw::isentropic(double gamma, double coefficient, double alpha)
{
    PressureLaw law;
    law.kind_ = LawKind::isentropic;
    law.coefficients_ = {coefficient};
    law.gamma_ = gamma;
    law.p_inf_ = coefficient * gamma;
    law.alpha_ = alpha;
    law.validate();
    return law;
}

PressureLaw PressureLaw::vdw_cubic(std::span<const double> coefficients, double alpha)
{
    if (coefficients.size() != 4)
    {
        throw ValidationError("vdw-cubic law needs 4 coefficients {s, x0, k, p0}");
    }
    double const s = coefficients[0];
    double const x0 = coefficients[1];
    double const k = coefficients[2];
    if (!(s > 0))
    {
        throw ValidationError("vdw-cubic scale s must be positive");
    }
    PressureLaw law;
    law.kind_ = LawKind::vdw_cubic;
    law.coefficients_ = copy_span(coefficients);
    // Expand Phat in powers of x = r/s; the constant term is removed by the shift.
    double const a1 = 3 * x0 * x0 + 2 * k * x0;
    double const a2 = -3 * x0 - k;
    double const a3 = 1;
    law.c1_ = a1 / s;
    law.c2_ = a2 / (s * s);
    law.c3_ = a3 / (s * s * s);
    law.gamma_ = 3;
    law.p_inf_ = 3 * law.c3_;
    law.alpha_ = alpha;
    law.validate();
    return law;
}

PressureLaw PressureLaw::reference_cubic(double alpha)
{
    double const coeffs[] = {3.234, 0.55, 1.0, 0.468};
    return vdw_cubic(coeffs, alpha);
}

PressureLaw PressureLaw::tabulated(std::vector<double> densities,
                                   std::vector<double> pressures,
                                   double gamma,
                                   double p_inf,
                                   double alpha)
{
    if (densities.size() != pressures.size() || densities.size() < 4)
    {
        throw ValidationError("tabulated law needs at least 4 (density, pressure) pairs");
    }
    if (densities.front() != 0)
    {
        throw ValidationError("tabulated law must start at density 0");
    }
    for (std::size_t i = 1; i < densities.size(); ++i)
    {
        if (!(densities[i] > densities[i - 1]))
        {
            throw ValidationError("tabulated densities must be strictly increasing");
        }
    }
    PressureLaw law;
    law.kind_ = LawKind::tabulated;
    law.coefficients_.reserve(2 * densities.size());
    for (std::size_t i = 0; i < densities.size(); ++i)
    {
        law.coefficients_.push_back(densities[i]);
        law.coefficients_.push_back(pressures[i]);
    }
    law.gamma_ = gamma;
    law.p_inf_ = p_inf;
    law.alpha_ = alpha;
    auto xs = densities;
    auto ys = pressures;
    law.table_ = std::make_shared<const detail::PressureTable>(detail::PressureTable{
        std::move(densities),
        std::move(pressures),
        boost::math::interpolators::pchip<std::vector<double>>(std::move(xs), std::move(ys))});
    law.validate();
    return law;
}

PressureLaw PressureLaw::with_alpha(double alpha) const
{
    PressureLaw copy = *this;
    copy.alpha_ = alpha;
    copy.validate();
    return copy;
}

double PressureLaw::gamma_tilde() const
{
    return std::max(2.0, gamma_);
}

//---------------------------------------------------------------------------//
void PressureLaw::validate() const
{
    if (!(gamma_ > 1) || !std::isfinite(gamma_))
    {
        throw ValidationError("pressure law growth rate gamma must exceed 1");
    }
    if (!(p_inf_ > 0))
    {
        throw ValidationError("pressure law asymptotic coefficient p_inf must be positive");
    }
    if (!(alpha_ > 0))
    {
        throw ValidationError("coupling coefficient alpha must be positive");
    }
    if (kind_ == LawKind::isentropic && !(coefficients_[0] > 0))
    {
        throw ValidationError("isentropic coefficient must be positive");
    }
    if (std::abs(pressure(0)) > 1e-14)
    {
        throw ValidationError("pressure law violates P(0) = 0");
    }
    constexpr int samples = 4000;
    constexpr double r_max = 100;
    for (int i = 0; i <= samples; ++i)
    {
        double const r = r_max * i / samples;
        if (pressure(r) < -1e-14)
        {
            throw ValidationError("pressure law is negative at r = " + std::to_string(r));
        }
    }
    for (double r : {1e3, 1e4})
    {
        double const ratio = dpressure(r) / std::pow(r, gamma_ - 1);
        if (std::abs(ratio - p_inf_) > 0.05 * p_inf_)
        {
            throw ValidationError("pressure law growth P'(r)/r^(gamma-1) = " + std::to_string(ratio)
                              + " at r = " + std::to_string(r) + " is not within 5% of p_inf");
        }
    }
}

double PressureLaw::tabulated_pressure(double r, bool derivative) const
{
    auto const& t = *table_;
    double const r_last = t.r.back();
    if (r <= r_last)
    {
        return derivative ? t.spline.prime(r) : t.spline(r);
    }
    if (derivative)
    {
        return p_inf_ * std::pow(r, gamma_ - 1);
    }
    return t.p.back() + p_inf_ / gamma_ * (std::pow(r, gamma_) - std::pow(r_last, gamma_));
}

double PressureLaw::eval(double r, PressureQuantity which) const
{
    if (!(r >= 0))
    {
        throw DomainError("pressure evaluated at negative or NaN density " + std::to_string(r));
    }
    double p = 0;
    double dp = 0;
    bool const want_derivative
        = which == PressureQuantity::dP || which == PressureQuantity::dPeff;
    switch (kind_)
    {
        case LawKind::isentropic: {
            double const a = coefficients_[0];
            if (want_derivative)
                dp = a * gamma_ * std::pow(r, gamma_ - 1);
            else
                p = a * std::pow(r, gamma_);
            break;
        }
        case LawKind::vdw_cubic:
            if (want_derivative)
                dp = c1_ + r * (2 * c2_ + 3 * c3_ * r);
            else
                p = r * (c1_ + r * (c2_ + c3_ * r));
            break;
        case LawKind::tabulated:
            if (want_derivative)
                dp = tabulated_pressure(r, true);
            else
                p = tabulated_pressure(r, false);
            break;
    }
    switch (which)
    {
        case PressureQuantity::P:
            return p;
        case PressureQuantity::dP:
            return dp;
        case PressureQuantity::Peff:
            return p + 0.5 * alpha_ * r * r;
        case PressureQuantity::dPeff:
            return dp + alpha_ * r;
    }
    return 0;
}

//---------------------------------------------------------------------------//
double PressureLaw::potential_integral(double r) const
{
    // int_1^r P(z)/z^2 dz in s = log z, where the integrand P(e^s) e^{-s}
    // stays bounded as z -> 0. Table knots split the range so that every
    // piece is smooth.
    double const s_end = std::log(r);
    std::vector<double> cuts{std::min(0.0, s_end)};
    if (table_)
    {
        for (double knot : table_->r)
        {
            if (knot > 0 && std::log(knot) > cuts.front() && std::log(knot) < std::max(0.0, s_end))
                cuts.push_back(std::log(knot));
        }
    }
    cuts.push_back(std::max(0.0, s_end));
    auto integrand = [this](double s) { return pressure(std::exp(s)) * std::exp(-s); };
    double sum = 0;
    double const tol = quadrature_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        sum += adaptive_simpson(integrand, cuts[k], cuts[k + 1], tol);
    return s_end >= 0 ? sum : -sum;
}

double PressureLaw::potential_by_quadrature(double r) const
{
    if (!(r >= 0))
    {
        throw DomainError("potential evaluated at negative density");
    }
    if (r == 0)
    {
        return 0;
    }
    return r * potential_integral(r);
}

double PressureLaw::potential(double r) const
{
    if (!(r >= 0))
    {
        throw DomainError("potential evaluated at negative density");
    }
    if (r == 0)
    {
        return 0;
    }
    switch (kind_)
    {
        case LawKind::isentropic:
            return coefficients_[0] * (std::pow(r, gamma_) - r) / (gamma_ - 1);
        case LawKind::vdw_cubic:
            return r * (c1_ * std::log(r) + c2_ * (r - 1) + 0.5 * c3_ * (r * r - 1));
        case LawKind::tabulated:
            return potential_by_quadrature(r);
    }
    return 0;
}

double PressureLaw::potential_derivative(double r) const
{
    if (!(r > 0))
    {
        throw DomainError("potential derivative needs positive density");
    }
    switch (kind_)
    {
        case LawKind::isentropic:
            return coefficients_[0] * (gamma_ * std::pow(r, gamma_ - 1) - 1) / (gamma_ - 1);
        case LawKind::vdw_cubic:
            return c1_ * (std::log(r) + 1) + c2_ * (2 * r - 1) + 0.5 * c3_ * (3 * r * r - 1);
        case LawKind::tabulated:
            return potential_integral(r) + pressure(r) / r;
    }
    return 0;
}

//---------------------------------------------------------------------------//
namespace {

constexpr int scan_points = 20000;

std::vector<double> sign_changes_of_dp(const PressureLaw& law, double r_scan)
{
    // Bracket transitions between P' >= 0 and P' < 0, then bisect.
    std::vector<double> roots;
    double r_prev = 0;
    bool neg_prev = law.dpressure(0) < 0;
    for (int i = 1; i <= scan_points; ++i)
    {
        double const r = r_scan * i / scan_points;
        bool const neg = law.dpressure(r) < 0;
        if (neg != neg_prev)
        {
            double lo = r_prev;
            double hi = r;
            while (hi - lo > 1e-10 * std::max(hi, 1e-300))
            {
                double const mid = 0.5 * (lo + hi);
                if ((law.dpressure(mid) < 0) == neg_prev)
                    lo = mid;
                else
                    hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        r_prev = r;
        neg_prev = neg;
    }
    return roots;
}

}  // namespace

SpinodalInfo spinodal(const PressureLaw& law, double r_scan)
{
    double range = r_scan > 0 ? r_scan : 50.0;
    auto roots = sign_changes_of_dp(law, range);
    if (r_scan <= 0 && roots.size() == 2 && 10 * roots[1] > range)
    {
        range = 10 * roots[1];
        roots = sign_changes_of_dp(law, range);
    }
    if (roots.empty())
    {
        return {};
    }
    if (roots.size() != 2)
    {
        throw UnsupportedLawError("pressure derivative changes sign "
                                  + std::to_string(roots.size())
                                  + " times; expected 0 or 2");
    }
    return {roots[0], roots[1], true};
}

double monotonization_alpha(const PressureLaw& law, double r_scan)
{
    if (r_scan <= 0)
    {
        auto const info = spinodal(law);
        r_scan = info.exists ? 10 * info.r2 : 50.0;
    }
    auto g = [&law](double r) { return -law.dpressure(r) / r; };
    int best = 1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= scan_points; ++i)
    {
        double const v = g(r_scan * i / scan_points);
        if (v > best_val)
        {
            best_val = v;
            best = i;
        }
    }
    if (best_val <= 0)
    {
        return 0;
    }
    // Golden-section refinement on the bracketing scan cells.
    double a = r_scan * std::max(best - 1, 1) / scan_points * (best == 1 ? 0.5 : 1.0);
    double b = r_scan * std::min(best + 1, scan_points) / scan_points;
    double const inv_phi = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    while (b - a > 1e-12 * b)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        }
    }
    return std::max({0.0, best_val, f1, f2});
}

}  // namespace spraylab
