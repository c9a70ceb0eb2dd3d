#include "spraylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spraylab/errors.hpp"

namespace spraylab {

namespace {

void require_size(std::span<const double> f, std::size_t n, const char* what)
{
    if (f.size() != n)
    {
        throw SizeError(std::string(what) + ": expected " + std::to_string(n)
                        + " values, got " + std::to_string(f.size()));
    }
}

}  // namespace

Grid1D::Grid1D(std::size_t n_cells, double length)
    : n_cells_(n_cells), length_(length), dx_(length / static_cast<double>(n_cells))
{
    if (n_cells < 4)
    {
        throw DomainError("grid needs at least 4 cells");
    }
    if (!(length > 0))
    {
        throw DomainError("grid length must be positive");
    }
}

Field Grid1D::centers() const
{
    Field x(n_cells_);
    for (std::size_t i = 0; i < n_cells_; ++i)
        x[i] = center(i);
    return x;
}

Field Grid1D::faces() const
{
    Field x(n_faces());
    for (std::size_t j = 0; j < n_faces(); ++j)
        x[j] = face(j);
    return x;
}

void FluidState::validate(const Grid1D& grid) const
{
    require_size(rho, grid.n_cells(), "density");
    require_size(c, grid.n_cells(), "order parameter");
    require_size(u, grid.n_faces(), "velocity");
    if (u.front() != 0 || u.back() != 0)
    {
        throw DomainError("velocity violates no-slip at the walls");
    }
    for (double r : rho)
    {
        if (!(r >= 0))
        {
            throw DomainError("density must be non-negative");
        }
    }
}

//---------------------------------------------------------------------------//
Field grad_center_to_face(const Grid1D& grid, std::span<const double> f)
{
    require_size(f, grid.n_cells(), "grad_center_to_face");
    std::size_t const n = grid.n_cells();
    double const inv_dx = 1 / grid.dx();
    Field g(n + 1, 0.0);
    for (std::size_t j = 1; j < n; ++j)
        g[j] = (f[j] - f[j - 1]) * inv_dx;
    return g;
}

Field div_face_to_center(const Grid1D& grid, std::span<const double> u)
{
    require_size(u, grid.n_faces(), "div_face_to_center");
    std::size_t const n = grid.n_cells();
    double const inv_dx = 1 / grid.dx();
    Field d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = (u[i + 1] - u[i]) * inv_dx;
    return d;
}

Field laplace_neumann(const Grid1D& grid, std::span<const double> f)
{
    require_size(f, grid.n_cells(), "laplace_neumann");
    std::size_t const n = grid.n_cells();
    double const inv_dx = 1 / grid.dx();
    // Written as a difference of face gradients so that div(grad f) matches bitwise.
    Field lap(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const right = i + 1 < n ? (f[i + 1] - f[i]) * inv_dx : 0.0;
        double const left = i > 0 ? (f[i] - f[i - 1]) * inv_dx : 0.0;
        lap[i] = (right - left) * inv_dx;
    }
    return lap;
}

Field laplace_dirichlet(const Grid1D& grid, std::span<const double> u)
{
    require_size(u, grid.n_faces(), "laplace_dirichlet");
    std::size_t const n = grid.n_cells();
    double const inv_dx2 = 1 / (grid.dx() * grid.dx());
    Field lap(n + 1, 0.0);
    for (std::size_t j = 1; j < n; ++j)
        lap[j] = (u[j + 1] - 2 * u[j] + u[j - 1]) * inv_dx2;
    return lap;
}

Field apply_operator(const Grid1D& grid, std::span<const double> field, Operator which)
{
    switch (which)
    {
        case Operator::grad_center_to_face:
            return grad_center_to_face(grid, field);
        case Operator::div_face_to_center:
            return div_face_to_center(grid, field);
        case Operator::laplace_neumann:
            return laplace_neumann(grid, field);
        case Operator::laplace_dirichlet:
            return laplace_dirichlet(grid, field);
    }
    throw DomainError("unknown operator");
}

Field central_gradient_at_centers(const Grid1D& grid, std::span<const double> f)
{
    require_size(f, grid.n_cells(), "central_gradient_at_centers");
    std::size_t const n = grid.n_cells();
    double const inv_2dx = 0.5 / grid.dx();
    Field g(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const right = i + 1 < n ? f[i + 1] : f[i];
        double const left = i > 0 ? f[i - 1] : f[i];
        g[i] = (right - left) * inv_2dx;
    }
    return g;
}

Field face_to_center(const Grid1D& grid, std::span<const double> u)
{
    require_size(u, grid.n_faces(), "face_to_center");
    Field uc(grid.n_cells());
    for (std::size_t i = 0; i < uc.size(); ++i)
        uc[i] = 0.5 * (u[i] + u[i + 1]);
    return uc;
}

double integrate(const Grid1D& grid, std::span<const double> f)
{
    require_size(f, grid.n_cells(), "integrate");
    double sum = 0;
    for (double v : f)
        sum += v;
    return sum * grid.dx();
}

double integrate_faces(const Grid1D& grid, std::span<const double> v)
{
    require_size(v, grid.n_faces(), "integrate_faces");
    double sum = 0.5 * (v.front() + v.back());
    for (std::size_t j = 1; j + 1 < v.size(); ++j)
        sum += v[j];
    return sum * grid.dx();
}

double l2_norm(const Grid1D& grid, std::span<const double> f)
{
    require_size(f, grid.n_cells(), "l2_norm");
    double sum = 0;
    for (double v : f)
        sum += v * v;
    return std::sqrt(sum * grid.dx());
}

//---------------------------------------------------------------------------//
Field mollify(const Grid1D& grid, std::span<const double> f, double window_h)
{
    require_size(f, grid.n_cells(), "mollify");
    double const dx = grid.dx();
    if (!(window_h >= dx * (1 - 1e-12)))
    {
        throw DomainError("mollify window must be at least one cell wide");
    }
    std::size_t const n = grid.n_cells();
    double const half = 0.5 * window_h;
    Field out(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const a = std::max(0.0, grid.center(i) - half);
        double const b = std::min(grid.length(), grid.center(i) + half);
        auto const k_lo = static_cast<long>(std::floor(a / dx)) - 1;
        auto const k_hi = static_cast<long>(std::floor(b / dx)) + 1;
        double sum = 0;
        double weight = 0;
        for (long k = std::max<long>(k_lo, 0); k <= std::min<long>(k_hi, static_cast<long>(n) - 1); ++k)
        {
            double const lo = std::max(a, static_cast<double>(k) * dx);
            double const hi = std::min(b, static_cast<double>(k + 1) * dx);
            double const w = hi - lo;
            // Slivers below rounding level are dropped so that window = dx is the identity.
            if (w > 1e-12 * dx)
            {
                sum += w * f[static_cast<std::size_t>(k)];
                weight += w;
            }
        }
        out[i] = sum / weight;
    }
    return out;
}

}  // namespace spraylab
