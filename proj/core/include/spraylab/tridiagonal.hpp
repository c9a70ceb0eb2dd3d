#pragma once

#include <span>

namespace spraylab {

/*!
 * Solve a tridiagonal system with the Thomas algorithm.
 *
 * Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
 * lower[0] and upper[n-1] are ignored. Intended for diagonally dominant
 * systems (no pivoting); throws NumericError on a vanishing pivot.
 */
void solve_tridiagonal(std::span<const double> lower,
                       std::span<const double> diag,
                       std::span<const double> upper,
                       std::span<const double> rhs,
                       std::span<double> x);

}  // namespace spraylab
