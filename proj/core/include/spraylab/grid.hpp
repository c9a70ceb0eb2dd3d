#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spraylab {

using Field = std::vector<double>;

//---------------------------------------------------------------------------//
/*!
 * Uniform grid on [0, L] with n cells. Scalars live at the n cell centers,
 * velocities at the n + 1 faces (staggered layout).
 */
class Grid1D
{
  public:
    Grid1D(std::size_t n_cells, double length);

    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_faces() const { return n_cells_ + 1; }
    double length() const { return length_; }
    double dx() const { return dx_; }

    double center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx_; }
    double face(std::size_t j) const { return static_cast<double>(j) * dx_; }

    Field centers() const;
    Field faces() const;

    bool operator==(const Grid1D& other) const = default;

  private:
    std::size_t n_cells_;
    double length_;
    double dx_;
};

//---------------------------------------------------------------------------//
/// Fluid fields at one instant: rho, c at centers; u at faces with u = 0 on the walls.
struct FluidState
{
    Field rho;
    Field u;
    Field c;
    double t{0};

    /// Throws SizeError / DomainError when sizes, no-slip or rho >= 0 are violated.
    void validate(const Grid1D& grid) const;
};

enum class Operator
{
    grad_center_to_face,
    div_face_to_center,
    laplace_neumann,
    laplace_dirichlet,
};

/// Second-order central stencils. Neumann (mirror) ghosts for center fields,
/// homogeneous Dirichlet for face fields; boundary outputs of face-valued
/// results are zero.
Field apply_operator(const Grid1D& grid, std::span<const double> field, Operator which);

Field grad_center_to_face(const Grid1D& grid, std::span<const double> f);
Field div_face_to_center(const Grid1D& grid, std::span<const double> u);
Field laplace_neumann(const Grid1D& grid, std::span<const double> f);
Field laplace_dirichlet(const Grid1D& grid, std::span<const double> u);

/// Centered first derivative at cell centers with mirror ghosts.
Field central_gradient_at_centers(const Grid1D& grid, std::span<const double> f);
/// Face velocities averaged to cell centers.
Field face_to_center(const Grid1D& grid, std::span<const double> u);

/// Midpoint rule: sum f_i dx.
double integrate(const Grid1D& grid, std::span<const double> f);
/// Trapezoid rule over faces (boundary faces weighted by dx/2).
double integrate_faces(const Grid1D& grid, std::span<const double> v);

/// Box-kernel average of width `window_h` centered at each cell, clipped at
/// the walls. Cells partially covered by the window contribute by overlap.
Field mollify(const Grid1D& grid, std::span<const double> f, double window_h);

/// L2 norm of a centered field, sqrt(sum f_i^2 dx).
double l2_norm(const Grid1D& grid, std::span<const double> f);

}  // namespace spraylab
