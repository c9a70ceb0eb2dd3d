#include "spraylab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spraylab/errors.hpp"

namespace spraylab {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    for (auto const& a : atoms_)
    {
        if (!(a.weight > 0) || !std::isfinite(a.weight))
        {
            throw DomainError("atom weights must be positive, got " + std::to_string(a.weight));
        }
        if (!(a.xi >= 0) || !std::isfinite(a.xi))
        {
            throw DomainError("atom positions must be non-negative, got " + std::to_string(a.xi));
        }
    }
}

AtomicMeasure AtomicMeasure::dirac(double xi)
{
    return AtomicMeasure({{1.0, xi}});
}

double AtomicMeasure::total_weight() const
{
    double sum = 0;
    for (auto const& a : atoms_)
        sum += a.weight;
    return sum;
}

void AtomicMeasure::add(double weight, double xi)
{
    if (weight <= 0)
        return;
    for (auto& a : atoms_)
    {
        if (a.xi == xi)
        {
            a.weight += weight;
            return;
        }
    }
    atoms_.push_back({weight, xi});
}

double AtomicMeasure::renormalize()
{
    double const total = total_weight();
    if (!(total > 0))
    {
        throw NumericError("cannot renormalize a measure without mass", total);
    }
    for (auto& a : atoms_)
        a.weight /= total;
    return total - 1;
}

void AtomicMeasure::sort()
{
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.xi < b.xi; });
}

//---------------------------------------------------------------------------//
double mean(const AtomicMeasure& m)
{
    return moment(m, [](double xi) { return xi; });
}

double averaged_pressure(const AtomicMeasure& m, const PressureLaw& law)
{
    return moment(m, [&law](double xi) { return law.peff(xi); }) / m.total_weight();
}

double q_drift(double pbar, const PressureLaw& law, const Params& params, double xi)
{
    return (pbar - law.peff(xi)) / params.viscosity();
}

double q_drift(const AtomicMeasure& m, const PressureLaw& law, const Params& params, double xi)
{
    double const pbar = moment(m, [&law](double z) { return law.peff(z); });
    return q_drift(pbar, law, params, xi);
}

CDFGrid cdf(const AtomicMeasure& m, std::span<const double> xi_grid)
{
    for (std::size_t k = 1; k < xi_grid.size(); ++k)
    {
        if (!(xi_grid[k] > xi_grid[k - 1]))
        {
            throw DomainError("cdf knots must be strictly increasing");
        }
    }
    AtomicMeasure sorted = m;
    sorted.sort();
    auto const atoms = sorted.atoms();

    CDFGrid out;
    out.xi.assign(xi_grid.begin(), xi_grid.end());
    out.f.resize(xi_grid.size());
    std::size_t next = 0;
    double acc = 0;
    for (std::size_t k = 0; k < xi_grid.size(); ++k)
    {
        while (next < atoms.size() && atoms[next].xi <= xi_grid[k])
            acc += atoms[next++].weight;
        out.f[k] = acc;
    }
    return out;
}

double stieltjes_M(const AtomicMeasure& m, const PressureLaw& law, const Params& params, double xi)
{
    double const pbar = moment(m, [&law](double z) { return law.peff(z); });
    double sum = 0;
    for (auto const& a : m.atoms())
    {
        if (a.xi <= xi)
            sum += a.weight * q_drift(pbar, law, params, a.xi);
    }
    return sum;
}

//---------------------------------------------------------------------------//
namespace {

Atom merged(const Atom& a, const Atom& b)
{
    double const w = a.weight + b.weight;
    return {w, (a.weight * a.xi + b.weight * b.xi) / w};
}

// Change of the second moment when a and b are replaced by their merge.
double merge_cost(const Atom& a, const Atom& b)
{
    double const d = a.xi - b.xi;
    return a.weight * b.weight / (a.weight + b.weight) * d * d;
}

// Greedy pair merging. A min-tournament tree over the adjacent-pair slots
// gives the cheapest live pair in O(1) and is repaired in O(log n) after
// each merge, which matters because every cell is compressed every step.
std::vector<Atom> reduce_to(std::vector<Atom> atoms, std::size_t max_atoms)
{
    constexpr double dead = std::numeric_limits<double>::infinity();
    std::size_t const n = atoms.size();
    std::size_t const slots = n - 1;
    std::size_t leaves = 1;
    while (leaves < slots)
        leaves *= 2;

    std::vector<std::size_t> next(n);
    std::vector<std::size_t> prev(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        next[i] = i + 1;
        prev[i] = i == 0 ? n : i - 1;
    }
    std::vector<double> cost(leaves, dead);
    for (std::size_t i = 0; i < slots; ++i)
        cost[i] = merge_cost(atoms[i], atoms[i + 1]);

    // tree[1] is the root; tree[leaves + s] is slot s.
    std::vector<std::size_t> tree(2 * leaves);
    auto better = [&cost](std::size_t a, std::size_t b) { return cost[b] < cost[a] ? b : a; };
    for (std::size_t s = 0; s < leaves; ++s)
        tree[leaves + s] = s;
    for (std::size_t v = leaves - 1; v >= 1; --v)
        tree[v] = better(tree[2 * v], tree[2 * v + 1]);
    auto update = [&](std::size_t s, double value) {
        cost[s] = value;
        for (std::size_t v = (leaves + s) / 2; v >= 1; v /= 2)
            tree[v] = better(tree[2 * v], tree[2 * v + 1]);
    };

    std::size_t count = n;
    while (count > max_atoms)
    {
        std::size_t const i = tree[1];
        std::size_t const j = next[i];
        atoms[i] = merged(atoms[i], atoms[j]);
        next[i] = next[j];
        if (next[i] < n)
            prev[next[i]] = i;
        --count;
        // Slot j (pair j, next j) is gone; slots i and prev i changed.
        if (j < slots)
            update(j, dead);
        update(i, next[i] < n ? merge_cost(atoms[i], atoms[next[i]]) : dead);
        if (prev[i] < n)
            update(prev[i], merge_cost(atoms[prev[i]], atoms[i]));
    }

    std::vector<Atom> out;
    out.reserve(count);
    for (std::size_t i = 0; i < n; i = next[i])
        out.push_back(atoms[i]);
    return out;
}

}  // namespace

AtomicMeasure compress(const AtomicMeasure& m, double merge_eps, std::size_t max_atoms)
{
    if (max_atoms < 1)
    {
        throw DomainError("compress: max_atoms must be at least 1");
    }
    AtomicMeasure sorted = m;
    sorted.sort();
    std::vector<Atom> atoms;
    atoms.reserve(sorted.size());
    for (auto const& a : sorted.atoms())
    {
        if (!atoms.empty() && a.xi - atoms.back().xi <= merge_eps)
            atoms.back() = merged(atoms.back(), a);
        else
            atoms.push_back(a);
    }
    if (atoms.size() > max_atoms)
        atoms = reduce_to(std::move(atoms), max_atoms);

    AtomicMeasure out;
    out.mutable_atoms() = std::move(atoms);
    if (!out.empty())
        out.renormalize();
    return out;
}

}  // namespace spraylab
