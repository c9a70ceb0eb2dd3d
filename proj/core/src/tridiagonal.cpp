#include "spraylab/tridiagonal.hpp"

#include <cmath>
#include <vector>

#include "spraylab/errors.hpp"

namespace spraylab {

void solve_tridiagonal(std::span<const double> lower,
                       std::span<const double> diag,
                       std::span<const double> upper,
                       std::span<const double> rhs,
                       std::span<double> x)
{
    std::size_t const n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n || x.size() != n)
    {
        throw SizeError("tridiagonal solve: inconsistent sizes");
    }
    if (n == 0)
    {
        return;
    }
    std::vector<double> c_prime(n);
    double pivot = diag[0];
    if (pivot == 0 || !std::isfinite(pivot))
    {
        throw NumericError("tridiagonal solve: zero pivot", 0);
    }
    c_prime[0] = upper[0] / pivot;
    x[0] = rhs[0] / pivot;

    // Forward sweep
    for (std::size_t i = 1; i < n; ++i)
    {
        pivot = diag[i] - lower[i] * c_prime[i - 1];
        if (pivot == 0 || !std::isfinite(pivot))
        {
            throw NumericError("tridiagonal solve: zero pivot", static_cast<double>(i));
        }
        c_prime[i] = upper[i] / pivot;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
    }

    // Back substitution
    for (std::size_t i = n - 1; i > 0; --i)
    {
        x[i - 1] -= c_prime[i - 1] * x[i];
    }
}

}  // namespace spraylab
