#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spraylab/hydro.hpp"
#include "spraylab/pressure.hpp"

namespace spraylab {

struct Atom
{
    double weight{0};
    double xi{0};

    bool operator==(const Atom&) const = default;
};

//---------------------------------------------------------------------------//
/*!
 * Finite convex combination of Dirac masses on [0, inf).
 *
 * Weights are positive and positions non-negative; the total weight is kept
 * at 1 by the solvers (see renormalize()) but may drift in between.
 */
class AtomicMeasure
{
  public:
    AtomicMeasure() = default;
    /// Throws DomainError for non-positive weights or negative/non-finite positions.
    explicit AtomicMeasure(std::vector<Atom> atoms);

    static AtomicMeasure dirac(double xi);

    std::span<const Atom> atoms() const { return atoms_; }
    std::vector<Atom>& mutable_atoms() { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    double total_weight() const;

    /// Add weight at xi, merging with an atom at the identical position.
    void add(double weight, double xi);

    /// Scale weights to sum exactly 1; returns the defect (sum - 1) beforehand.
    double renormalize();

    /// Sort atoms by position.
    void sort();

    bool operator==(const AtomicMeasure&) const = default;

  private:
    std::vector<Atom> atoms_;
};

/// Per-cell measures of a grid.
using MeasureField = std::vector<AtomicMeasure>;

/// Cumulative distribution sampled at increasing knots.
struct CDFGrid
{
    std::vector<double> xi;
    std::vector<double> f;
};

//---------------------------------------------------------------------------//
/// sum_i w_i g(xi_i)
template<class G>
double moment(const AtomicMeasure& m, G&& g)
{
    double sum = 0;
    for (auto const& a : m.atoms())
        sum += a.weight * g(a.xi);
    return sum;
}

/// First moment sum_i w_i xi_i.
double mean(const AtomicMeasure& m);

/// Averaged pressure <nu, Peff> / <nu, 1>, i.e. the moment of the normalized measure.
double averaged_pressure(const AtomicMeasure& m, const PressureLaw& law);

/// Q(xi) = (pbar - Peff(xi)) / (lambda + 2 mu), pbar given.
double q_drift(double pbar, const PressureLaw& law, const Params& params, double xi);
/// Q(xi) with pbar = <m, Peff>.
double q_drift(const AtomicMeasure& m, const PressureLaw& law, const Params& params, double xi);

/// f_k = sum_{xi_i <= xi_k} w_i.
CDFGrid cdf(const AtomicMeasure& m, std::span<const double> xi_grid);

/// M(xi) = sum_{xi_i <= xi} w_i Q(xi_i), atoms at xi included.
double stieltjes_M(const AtomicMeasure& m, const PressureLaw& law, const Params& params, double xi);

/*!
 * Reduce the atom count.
 *
 * Adjacent atoms closer than `merge_eps` are merged at their weighted mean;
 * while more than `max_atoms` remain, the adjacent pair whose merge changes
 * the second moment least is merged. Weight and first moment are preserved
 * by every merge; weights are renormalized to sum 1 at the end.
 */
AtomicMeasure compress(const AtomicMeasure& m, double merge_eps, std::size_t max_atoms);

}  // namespace spraylab
