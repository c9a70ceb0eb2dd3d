#pragma once

#include <algorithm>
#include <cmath>

#include "spraylab/errors.hpp"

namespace spraylab {
namespace detail {

template<class F>
double simpson_recurse(F& f,
                       double a,
                       double b,
                       double fa,
                       double fm,
                       double fb,
                       double whole,
                       double tol,
                       int depth,
                       double& worst)
{
    double const m = 0.5 * (a + b);
    double const lm = 0.5 * (a + m);
    double const rm = 0.5 * (m + b);
    double const flm = f(lm);
    double const frm = f(rm);
    double const h = b - a;
    double const left = h / 12 * (fa + 4 * flm + fm);
    double const right = h / 12 * (fm + 4 * frm + fb);
    double const delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol)
    {
        return left + right + delta / 15;
    }
    if (depth <= 0)
    {
        worst = std::max(worst, std::abs(delta));
        return left + right + delta / 15;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, worst)
           + simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, worst);
}

}  // namespace detail

template<class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth)
{
    if (a == b)
    {
        return 0;
    }
    double const fa = f(a);
    double const fb = f(b);
    double const fm = f(0.5 * (a + b));
    double const whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double worst = 0;
    double const result
        = detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth, worst);
    if (worst > 0 || !std::isfinite(result))
    {
        throw NumericError("adaptive Simpson quadrature did not converge", worst);
    }
    return result;
}

}  // namespace spraylab
