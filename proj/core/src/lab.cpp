#include "spraylab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spraylab/errors.hpp"

namespace spraylab {

//---------------------------------------------------------------------------//
void OscillationSpec::validate() const
{
    if (n_interfaces < 1)
        throw ValidationError("initial.oscillation.n_interfaces must be at least 1");
    if (!(r_vap > 0))
        throw ValidationError("initial.oscillation.r_vap must be positive");
    if (!(r_liq > r_vap))
        throw ValidationError("initial.oscillation.r_liq must exceed r_vap");
    if (!(theta > 0 && theta < 1))
        throw ValidationError("initial.oscillation.theta must lie in (0, 1)");
    if (profile == Profile::smoothed && !(width > 0))
        throw ValidationError("initial.oscillation.width must be positive for the smoothed profile");
}

Field gen_oscillating_density(const Grid1D& grid, const OscillationSpec& spec)
{
    spec.validate();
    std::size_t const n = spec.n_interfaces;
    if (2 * n > grid.n_cells())
    {
        throw DomainError("gen_oscillating_density needs 2 n_interfaces <= n_cells, got n_interfaces = "
                          + std::to_string(n) + " on " + std::to_string(grid.n_cells()) + " cells");
    }
    double const block = grid.length() / static_cast<double>(n);
    double const jump = spec.r_liq - spec.r_vap;
    Field rho(grid.n_cells());
    for (std::size_t i = 0; i < rho.size(); ++i)
    {
        double const x = grid.center(i);
        if (spec.profile == Profile::blocks)
        {
            double const s = x / block;
            bool const liquid = s - std::floor(s) < spec.theta;
            rho[i] = liquid ? spec.r_liq : spec.r_vap;
            continue;
        }
        // Sum of smoothed indicators of [a_k, b_k]. The first liquid block
        // touches the left wall and gets no ramp there.
        double chi = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            double const a = static_cast<double>(k) * block;
            double const b = a + spec.theta * block;
            double const up = k == 0 ? 1.0 : std::tanh((x - a) / spec.width);
            chi += 0.5 * (up - std::tanh((x - b) / spec.width));
        }
        rho[i] = spec.r_vap + jump * chi;
    }
    return rho;
}

AtomicMeasure limit_measure(double theta, double r_vap, double r_liq)
{
    if (!(theta > 0 && theta < 1))
    {
        throw DomainError("limit_measure: theta must lie in (0, 1)");
    }
    return AtomicMeasure({{1 - theta, r_vap}, {theta, r_liq}});
}

//---------------------------------------------------------------------------//
Observable identity_observable()
{
    return {"xi", [](double z) { return z; }, [](double) { return 1.0; }};
}

Observable bounded_observable()
{
    return {"bounded",
            [](double z) { return z / (1 + z); },
            [](double z) { return 1 / ((1 + z) * (1 + z)); }};
}

Observable half_square_observable()
{
    return {"half_square", [](double z) { return 0.5 * z * z; }, [](double z) { return z; }};
}

Observable compact_observable(double radius)
{
    if (!(radius > 0))
    {
        throw DomainError("compact_observable: radius must be positive");
    }
    return {"compact",
            [radius](double z) {
                double const s = z / radius;
                return s < 1 ? (1 - s * s) * (1 - s * s) : 0.0;
            },
            [radius](double z) {
                double const s = z / radius;
                return s < 1 ? -4 * s * (1 - s * s) / radius : 0.0;
            }};
}

//---------------------------------------------------------------------------//
double weak_distance(const Grid1D& grid,
                     std::span<const double> a,
                     std::span<const double> b,
                     double window_h)
{
    if (a.size() != grid.n_cells() || b.size() != grid.n_cells())
    {
        throw SizeError("weak_distance: fields do not match the grid");
    }
    Field diff(a.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = a[i] - b[i];
    return l2_norm(grid, mollify(grid, diff, window_h));
}

double weak_distance(const Grid1D& grid,
                     std::span<const Field> a,
                     std::span<const Field> b,
                     double window_h)
{
    if (a.size() != b.size() || a.empty())
    {
        throw SizeError("weak_distance: snapshot counts differ or are zero");
    }
    double sum = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        double const d = weak_distance(grid, a[k], b[k], window_h);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

std::vector<Field> measure_moments(std::span<const EffectiveState> snapshots,
                                   const std::function<double(double)>& g)
{
    std::vector<Field> out;
    out.reserve(snapshots.size());
    for (auto const& s : snapshots)
    {
        Field f(s.nu.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = moment(s.nu[i], g);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Field> density_observable(std::span<const FluidState> snapshots,
                                      const std::function<double(double)>& g)
{
    std::vector<Field> out;
    out.reserve(snapshots.size());
    for (auto const& s : snapshots)
    {
        Field f(s.rho.size());
        std::transform(s.rho.begin(), s.rho.end(), f.begin(), g);
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

bool same_time(double a, double b)
{
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

}  // namespace

double evf_gap(const Grid1D& grid,
               std::span<const FluidState> detailed,
               std::span<const EffectiveState> effective,
               const PressureLaw& law,
               const Params& params,
               const Observable& b,
               double window_h)
{
    if (detailed.size() != effective.size() || detailed.empty())
    {
        throw SizeError("evf_gap: snapshot counts differ or are zero");
    }
    double const visc = params.viscosity();
    std::vector<Field> lhs;
    std::vector<Field> rhs;
    for (std::size_t k = 0; k < detailed.size(); ++k)
    {
        auto const& d = detailed[k];
        auto const& e = effective[k];
        if (!same_time(d.t, e.t))
        {
            throw DomainError("evf_gap: snapshot " + std::to_string(k) + " is at t = "
                              + std::to_string(d.t) + " vs " + std::to_string(e.t));
        }
        Field const div_d = div_face_to_center(grid, d.u);
        Field const div_e = div_face_to_center(grid, e.u);
        Field fd(grid.n_cells());
        Field fe(grid.n_cells());
        for (std::size_t i = 0; i < fd.size(); ++i)
        {
            fd[i] = (law.peff(d.rho[i]) - visc * div_d[i]) * b.value(d.rho[i]);
            fe[i] = (e.pbar[i] - visc * div_e[i]) * moment(e.nu[i], b.value);
        }
        lhs.push_back(std::move(fd));
        rhs.push_back(std::move(fe));
    }
    return weak_distance(grid, lhs, rhs, window_h);
}

//---------------------------------------------------------------------------//
std::string_view to_string(Equation which)
{
    switch (which)
    {
        case Equation::continuity:
            return "continuity";
        case Equation::momentum:
            return "momentum";
        case Equation::parabolic:
            return "parabolic";
        case Equation::renormalized:
            return "renormalized";
        case Equation::kinetic:
            return "kinetic";
        case Equation::cdf:
            return "cdf";
    }
    return "unknown";
}

Equation equation_from_string(std::string_view name)
{
    for (auto e : {Equation::continuity,
                   Equation::momentum,
                   Equation::parabolic,
                   Equation::renormalized,
                   Equation::kinetic,
                   Equation::cdf})
    {
        if (to_string(e) == name)
            return e;
    }
    throw ValidationError("unknown equation '" + std::string(name)
                          + "' (expected continuity, momentum, parabolic, renormalized, kinetic or cdf)");
}

std::vector<TestFunction> standard_test_functions(double length)
{
    double const k = std::numbers::pi / length;
    std::vector<TestFunction> out;
    out.push_back({"sin1_linear",
                   [k](double t, double x) { return std::sin(k * x) * (1 + t); },
                   [k](double, double x) { return std::sin(k * x); },
                   [k](double t, double x) { return k * std::cos(k * x) * (1 + t); }});
    out.push_back({"sin2_cos",
                   [k](double t, double x) { return std::sin(2 * k * x) * std::cos(t); },
                   [k](double t, double x) { return -std::sin(2 * k * x) * std::sin(t); },
                   [k](double t, double x) { return 2 * k * std::cos(2 * k * x) * std::cos(t); }});
    out.push_back({"sin1sq_exp",
                   [k](double t, double x) { return std::pow(std::sin(k * x), 2) * std::exp(-t); },
                   [k](double t, double x) { return -std::pow(std::sin(k * x), 2) * std::exp(-t); },
                   [k](double t, double x) { return k * std::sin(2 * k * x) * std::exp(-t); }});
    return out;
}

//---------------------------------------------------------------------------//
namespace {

/// Fields of one snapshot as seen by the residual assembly.
struct Snapshot
{
    double t;
    std::span<const double> rho;
    std::span<const double> u;
    std::span<const double> c;
    /// Peff(rho) or the averaged pressure.
    std::span<const double> pressure;
    /// Null for detailed states.
    const MeasureField* nu;
};

/// Space integrand and end-time density of one snapshot.
struct Terms
{
    double volume{0};
    double density{0};
};

class Assembler
{
  public:
    Assembler(const Grid1D& grid,
              const PressureLaw& law,
              const Params& params,
              Equation which,
              const TestFunction& phi,
              const ResidualOptions& options)
        : grid_(grid), law_(law), params_(params), which_(which), phi_(phi), options_(options)
    {
    }

    Terms operator()(const Snapshot& s) const
    {
        switch (which_)
        {
            case Equation::continuity:
                return continuity(s);
            case Equation::momentum:
                return momentum(s);
            case Equation::parabolic:
                return parabolic(s);
            case Equation::renormalized:
                return renormalized(s);
            case Equation::kinetic:
                return kinetic(s);
            case Equation::cdf:
                return cdf_form(s);
        }
        return {};
    }

  private:
    Terms continuity(const Snapshot& s) const
    {
        Field const uc = face_to_center(grid_, s.u);
        Terms out;
        for (std::size_t i = 0; i < s.rho.size(); ++i)
        {
            double const x = grid_.center(i);
            out.volume += s.rho[i] * phi_.dt(s.t, x) + s.rho[i] * uc[i] * phi_.dx(s.t, x);
            out.density += s.rho[i] * phi_.value(s.t, x);
        }
        return scaled(out);
    }

    Terms momentum(const Snapshot& s) const
    {
        Field const uc = face_to_center(grid_, s.u);
        Field const div = div_face_to_center(grid_, s.u);
        Field const cx = central_gradient_at_centers(grid_, s.c);
        double const visc = params_.viscosity();
        Terms out;
        for (std::size_t i = 0; i < s.rho.size(); ++i)
        {
            double const x = grid_.center(i);
            double const m = s.rho[i] * uc[i];
            out.volume += m * phi_.dt(s.t, x) + (m * uc[i] + s.pressure[i] - visc * div[i]) * phi_.dx(s.t, x)
                          + params_.alpha * s.rho[i] * cx[i] * phi_.value(s.t, x);
            out.density += m * phi_.value(s.t, x);
        }
        return scaled(out);
    }

    Terms parabolic(const Snapshot& s) const
    {
        double const dx = grid_.dx();
        Terms out;
        for (std::size_t i = 0; i < s.c.size(); ++i)
        {
            double const x = grid_.center(i);
            out.volume += params_.beta * s.c[i] * phi_.dt(s.t, x)
                          - params_.alpha * (s.c[i] - s.rho[i]) * phi_.value(s.t, x);
            out.density += params_.beta * s.c[i] * phi_.value(s.t, x);
        }
        // The gradient pairing lives on interior faces, where c_x is exact for the stencil.
        for (std::size_t j = 1; j < s.c.size(); ++j)
        {
            out.volume -= params_.kappa * (s.c[j] - s.c[j - 1]) / dx * phi_.dx(s.t, grid_.face(j));
        }
        return scaled(out);
    }

    Terms renormalized(const Snapshot& s) const
    {
        auto const& b = options_.renormalization;
        Field const uc = face_to_center(grid_, s.u);
        Field const div = div_face_to_center(grid_, s.u);
        Terms out;
        for (std::size_t i = 0; i < s.rho.size(); ++i)
        {
            double const x = grid_.center(i);
            double const r = s.rho[i];
            double const br = b.value(r);
            out.volume += br * phi_.dt(s.t, x) + br * uc[i] * phi_.dx(s.t, x)
                          - (b.derivative(r) * r - br) * div[i] * phi_.value(s.t, x);
            out.density += br * phi_.value(s.t, x);
        }
        return scaled(out);
    }

    // <nu, phi_t g + phi_x u g + phi (xi g' - g)(Q - divu)>
    Terms kinetic(const Snapshot& s) const
    {
        auto const& g = options_.kinetic_profile;
        Field const uc = face_to_center(grid_, s.u);
        Field const div = div_face_to_center(grid_, s.u);
        Terms out;
        for (std::size_t i = 0; i < s.rho.size(); ++i)
        {
            double const x = grid_.center(i);
            double const ft = phi_.dt(s.t, x);
            double const fx = phi_.dx(s.t, x);
            double const f = phi_.value(s.t, x);
            auto cell = [&](double w, double xi, double q) {
                double const gx = g.value(xi);
                out.volume += w * (gx * ft + gx * uc[i] * fx + (xi * g.derivative(xi) - gx) * (q - div[i]) * f);
                out.density += w * gx * f;
            };
            if (s.nu == nullptr)
            {
                cell(1.0, s.rho[i], 0.0);
                continue;
            }
            double const pbar = averaged_pressure((*s.nu)[i], law_);
            for (auto const& a : (*s.nu)[i].atoms())
                cell(a.weight, a.xi, q_drift(pbar, law_, params_, a.xi));
        }
        return scaled(out);
    }

    /*
     * int f h dxi, int xi f h' dxi and int xi M h' dxi with h = -g'. f and M
     * are constant between sorted atoms, so each piece integrates exactly
     * against the antiderivatives
     *   int h = -g,   int xi h' = g - xi g' =: K,
     * and both vanish past the support of g.
     */
    Terms cdf_form(const Snapshot& s) const
    {
        auto const& g = options_.cdf_profile;
        auto K = [&g](double xi) { return g.value(xi) - xi * g.derivative(xi); };
        Field const uc = face_to_center(grid_, s.u);
        Field const div = div_face_to_center(grid_, s.u);
        Terms out;
        std::vector<double> knots;
        for (std::size_t i = 0; i < s.rho.size(); ++i)
        {
            AtomicMeasure m = (*s.nu)[i];
            m.sort();
            auto const atoms = m.atoms();
            knots.clear();
            for (auto const& a : atoms)
                knots.push_back(a.xi);
            knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
            CDFGrid const f = cdf(m, knots);

            // M is accumulated along the sorted atoms; this is stieltjes_M
            // evaluated at every knot without the quadratic cost.
            double const pbar = averaged_pressure(m, law_);
            double M = 0;
            std::size_t next_atom = 0;
            double fh = 0;
            double xfh = 0;
            double xmh = 0;
            for (std::size_t k = 0; k < knots.size(); ++k)
            {
                double const lo = knots[k];
                while (next_atom < atoms.size() && atoms[next_atom].xi <= lo)
                {
                    auto const& a = atoms[next_atom++];
                    M += a.weight * q_drift(pbar, law_, params_, a.xi);
                }
                double const hi_g = k + 1 < knots.size() ? g.value(knots[k + 1]) : 0.0;
                double const hi_k = k + 1 < knots.size() ? K(knots[k + 1]) : 0.0;
                fh += f.f[k] * (g.value(lo) - hi_g);
                xfh += f.f[k] * (hi_k - K(lo));
                xmh += M * (hi_k - K(lo));
            }
            double const x = grid_.center(i);
            out.volume += fh * phi_.dt(s.t, x) + fh * uc[i] * phi_.dx(s.t, x)
                          - (xfh * div[i] - xmh) * phi_.value(s.t, x);
            out.density += fh * phi_.value(s.t, x);
        }
        return scaled(out);
    }

    Terms scaled(Terms t) const
    {
        t.volume *= grid_.dx();
        t.density *= grid_.dx();
        return t;
    }

    const Grid1D& grid_;
    const PressureLaw& law_;
    const Params& params_;
    Equation which_;
    const TestFunction& phi_;
    const ResidualOptions& options_;
};

double assemble(std::span<const Snapshot> snapshots, const Assembler& terms)
{
    if (snapshots.size() < 2)
    {
        throw DomainError("weak_residual needs at least two snapshots");
    }
    Terms prev = terms(snapshots.front());
    double const start = prev.density;
    double volume = 0;
    for (std::size_t k = 1; k < snapshots.size(); ++k)
    {
        Terms const next = terms(snapshots[k]);
        volume += 0.5 * (snapshots[k].t - snapshots[k - 1].t) * (prev.volume + next.volume);
        prev = next;
    }
    return std::abs(volume - (prev.density - start));
}

}  // namespace

double weak_residual(const Grid1D& grid,
                     std::span<const FluidState> trajectory,
                     const PressureLaw& law,
                     const Params& params,
                     Equation which,
                     const TestFunction& phi,
                     const ResidualOptions& options)
{
    if (which == Equation::cdf)
    {
        throw DomainError("the cdf residual needs an effective trajectory");
    }
    std::vector<Field> pressure;
    std::vector<Snapshot> snaps;
    pressure.reserve(trajectory.size());
    for (auto const& s : trajectory)
    {
        s.validate(grid);
        Field p(s.rho.size());
        std::transform(s.rho.begin(), s.rho.end(), p.begin(), [&law](double r) { return law.peff(r); });
        pressure.push_back(std::move(p));
        snaps.push_back({s.t, s.rho, s.u, s.c, pressure.back(), nullptr});
    }
    return assemble(snaps, Assembler(grid, law, params, which, phi, options));
}

double weak_residual(const Grid1D& grid,
                     std::span<const EffectiveState> trajectory,
                     const PressureLaw& law,
                     const Params& params,
                     Equation which,
                     const TestFunction& phi,
                     const ResidualOptions& options)
{
    std::vector<Snapshot> snaps;
    for (auto const& s : trajectory)
    {
        s.validate(grid, params);
        snaps.push_back({s.t, s.rho, s.u, s.c, s.pbar, &s.nu});
    }
    return assemble(snaps, Assembler(grid, law, params, which, phi, options));
}

}  // namespace spraylab
