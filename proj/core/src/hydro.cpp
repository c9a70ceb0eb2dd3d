#include "spraylab/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spraylab/errors.hpp"
#include "spraylab/tridiagonal.hpp"

namespace spraylab {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0) || !std::isfinite(v))
    {
        throw ValidationError(std::string(name) + " must be positive");
    }
}

void require_finite(std::span<const double> f, const char* what)
{
    for (double v : f)
    {
        if (!std::isfinite(v))
        {
            throw BlowUp(std::string("non-finite value in ") + what);
        }
    }
}

}  // namespace

void Params::validate() const
{
    require_positive(mu, "physics.mu");
    require_positive(lambda, "physics.lambda");
    require_positive(kappa, "physics.kappa");
    require_positive(alpha, "physics.alpha");
    require_positive(beta, "physics.beta");
    if (!(cfl > 0 && cfl <= 1))
    {
        throw ValidationError("numerics.cfl must lie in (0, 1]");
    }
    require_positive(dt_max, "numerics.dt_max");
    if (!(t_end >= 0))
    {
        throw ValidationError("numerics.t_end must be non-negative");
    }
    require_positive(renorm_tol, "numerics.renorm_tol");
    if (!(atom_merge_eps >= 0))
    {
        throw ValidationError("numerics.merge_eps must be non-negative");
    }
    if (max_atoms < 1)
    {
        throw ValidationError("numerics.max_atoms must be at least 1");
    }
}

//---------------------------------------------------------------------------//
Field donor_cell_flux(const Grid1D& grid, std::span<const double> rho, std::span<const double> u)
{
    std::size_t const n = grid.n_cells();
    Field flux(n + 1, 0.0);
    for (std::size_t j = 1; j < n; ++j)
    {
        flux[j] = u[j] * (u[j] >= 0 ? rho[j - 1] : rho[j]);
    }
    return flux;
}

Field step_momentum(const Grid1D& grid, const MomentumInput& in, const Params& params, double dt)
{
    std::size_t const n = grid.n_cells();
    if (in.rho_old.size() != n || in.rho_new.size() != n || in.c.size() != n
        || in.pressure.size() != n || in.u.size() != n + 1)
    {
        throw SizeError("step_momentum: field sizes do not match the grid");
    }
    if (!(dt > 0))
    {
        throw DomainError("step_momentum: dt must be positive");
    }
    require_finite(in.u, "velocity");
    require_finite(in.pressure, "pressure");
    require_finite(in.rho_new, "density");
    require_finite(in.c, "order parameter");

    double const dx = grid.dx();
    double const inv_dx = 1 / dx;
    auto const& u = in.u;

    // Momentum flux through cell centers, upwinded with the face velocity.
    Field const flux = donor_cell_flux(grid, in.rho_old, u);
    Field center_flux(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const fc = 0.5 * (flux[i] + flux[i + 1]);
        center_flux[i] = fc * (fc >= 0 ? u[i] : u[i + 1]);
    }

    // Interior faces j = 1..n-1 are the unknowns.
    std::size_t const m = n - 1;
    double const diffusion = dt * params.viscosity() * inv_dx * inv_dx;
    Field lower(m, -diffusion);
    Field upper(m, -diffusion);
    Field diag(m);
    Field rhs(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        std::size_t const j = k + 1;
        double const rho_face_old = 0.5 * (in.rho_old[j - 1] + in.rho_old[j]);
        double const rho_face_new = 0.5 * (in.rho_new[j - 1] + in.rho_new[j]);
        double momentum = rho_face_old * u[j];
        momentum -= dt * inv_dx * (center_flux[j] - center_flux[j - 1]);
        momentum -= dt * inv_dx * (in.pressure[j] - in.pressure[j - 1]);
        momentum += dt * params.alpha * rho_face_new * inv_dx * (in.c[j] - in.c[j - 1]);
        double face_density = rho_face_new;
        if (face_density < vacuum_floor)
        {
            face_density = vacuum_floor;
            momentum = 0;
        }
        diag[k] = face_density + 2 * diffusion;
        rhs[k] = momentum;
    }
    Field interior(m);
    solve_tridiagonal(lower, diag, upper, rhs, interior);

    Field u_new(n + 1, 0.0);
    std::copy(interior.begin(), interior.end(), u_new.begin() + 1);
    return u_new;
}

Field step_order_parameter(const Grid1D& grid,
                           std::span<const double> rho,
                           std::span<const double> c_old,
                           const Params& params,
                           double dt)
{
    std::size_t const n = grid.n_cells();
    if (rho.size() != n || c_old.size() != n)
    {
        throw SizeError("step_order_parameter: field sizes do not match the grid");
    }
    if (!(dt > 0))
    {
        throw DomainError("step_order_parameter: dt must be positive");
    }
    require_finite(rho, "density");
    require_finite(c_old, "order parameter");

    // Solved for the increment c_new - c_old so that any fixed point
    // (rho = c_old, c_old uniform) gives a zero right-hand side exactly.
    double const k = params.kappa / (grid.dx() * grid.dx());
    double const relax = params.beta / dt;
    Field const lap = laplace_neumann(grid, c_old);
    Field lower(n, -k);
    Field upper(n, -k);
    Field diag(n);
    Field rhs(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const neighbours = (i > 0 ? 1.0 : 0.0) + (i + 1 < n ? 1.0 : 0.0);
        diag[i] = relax + params.alpha + neighbours * k;
        rhs[i] = params.alpha * (rho[i] - c_old[i]) + params.kappa * lap[i];
    }
    lower[0] = 0;
    upper[n - 1] = 0;
    Field c_new(n);
    solve_tridiagonal(lower, diag, upper, rhs, c_new);
    for (std::size_t i = 0; i < n; ++i)
        c_new[i] += c_old[i];
    return c_new;
}

double stable_dt(const Grid1D& grid,
                 std::span<const double> rho,
                 std::span<const double> u,
                 const PressureLaw& law,
                 const Params& params)
{
    double max_u = 0;
    for (double v : u)
        max_u = std::max(max_u, std::abs(v));
    double max_cs = 0;
    for (double r : rho)
        max_cs = std::max(max_cs, std::sqrt(std::max(law.dpeff(r), 0.0)));
    double const speed = max_u + max_cs;
    if (speed <= 0)
    {
        return params.dt_max;
    }
    return std::min(params.dt_max, params.cfl * grid.dx() / speed);
}

//---------------------------------------------------------------------------//
EnergyReport total_energy(const Grid1D& grid,
                          const FluidState& state,
                          const PressureLaw& law,
                          const Params& params)
{
    std::size_t const n = grid.n_cells();
    EnergyReport e;
    double kinetic = 0;
    double potential = 0;
    double coupling = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const u2 = 0.5 * (state.u[i] * state.u[i] + state.u[i + 1] * state.u[i + 1]);
        kinetic += 0.5 * state.rho[i] * u2;
        potential += law.potential(state.rho[i]);
        double const gap = state.rho[i] - state.c[i];
        coupling += 0.5 * params.alpha * gap * gap;
    }
    double gradient = 0;
    for (std::size_t j = 1; j < n; ++j)
    {
        double const g = (state.c[j] - state.c[j - 1]) / grid.dx();
        gradient += 0.5 * params.kappa * g * g;
    }
    double const dx = grid.dx();
    e.kinetic = kinetic * dx;
    e.potential_w = potential * dx;
    e.coupling = coupling * dx;
    e.gradient = gradient * dx;
    e.e0 = e.total();
    return e;
}

double viscous_dissipation_rate(const Grid1D& grid, std::span<const double> u, const Params& params)
{
    double sum = 0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
    {
        double const du = (u[i + 1] - u[i]) / grid.dx();
        sum += du * du;
    }
    return params.viscosity() * sum * grid.dx();
}

double order_dissipation_rate(const Grid1D& grid,
                              std::span<const double> c_old,
                              std::span<const double> c_new,
                              const Params& params,
                              double dt)
{
    double sum = 0;
    for (std::size_t i = 0; i < c_old.size(); ++i)
    {
        double const rate = (c_new[i] - c_old[i]) / dt;
        sum += rate * rate;
    }
    return params.beta * sum * grid.dx();
}

//---------------------------------------------------------------------------//
EnergyBudget::EnergyBudget(const Grid1D& grid,
                           const PressureLaw& law,
                           const Params& params,
                           const FluidState& initial)
    : grid_(grid), law_(law), params_(params)
{
    auto e = total_energy(grid_, initial, law_, params_);
    e0_ = e.total();
    e.e0 = e0_;
    rows_.push_back({initial.t, e});
}

void EnergyBudget::add_step(const FluidState& prev, const FluidState& next)
{
    double const dt = next.t - prev.t;
    if (!(dt > 0))
    {
        throw DomainError("energy budget: steps must advance in time");
    }
    visc_ += dt * viscous_dissipation_rate(grid_, next.u, params_);
    order_ += dt * order_dissipation_rate(grid_, prev.c, next.c, params_, dt);
    auto e = total_energy(grid_, next, law_, params_);
    e.e0 = e0_;
    e.dissipation_visc = visc_;
    e.dissipation_c = order_;
    rows_.push_back({next.t, e});
}

double EnergyBudget::max_abs_defect() const
{
    double worst = 0;
    for (auto const& row : rows_)
        worst = std::max(worst, std::abs(row.energy.defect()));
    return worst;
}

std::vector<EnergyLedgerRow> energy_budget(const Grid1D& grid,
                                           std::span<const FluidState> trajectory,
                                           const PressureLaw& law,
                                           const Params& params)
{
    if (trajectory.size() < 2)
    {
        throw DomainError("energy budget needs at least 2 states");
    }
    EnergyBudget budget(grid, law, params, trajectory.front());
    for (std::size_t k = 1; k < trajectory.size(); ++k)
    {
        budget.add_step(trajectory[k - 1], trajectory[k]);
    }
    return budget.rows();
}

}  // namespace spraylab
