#include <cmath>
#include <vector>

#include "doctest.h"
#include "spraylab/errors.hpp"
#include "spraylab/hydro.hpp"
#include "spraylab/tridiagonal.hpp"

using namespace spraylab;

namespace {

Field uniform_pressure(const PressureLaw& law, const Field& rho)
{
    Field p(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        p[i] = law.peff(rho[i]);
    return p;
}

}  // namespace

TEST_CASE("tridiagonal solve")
{
    Field const lower{0, -1, -1, -1};
    Field const diag{2, 2, 2, 2};
    Field const upper{-1, -1, -1, 0};
    Field const rhs{1, 0, 0, 1};
    Field x(4);
    solve_tridiagonal(lower, diag, upper, rhs, x);
    for (double v : x)
        CHECK(v == doctest::Approx(1.0));
    Field const singular{0, 0, 0, 0};
    CHECK_THROWS_AS(solve_tridiagonal(lower, singular, upper, rhs, x), NumericError);
    Field y(3);
    CHECK_THROWS_AS(solve_tridiagonal(lower, diag, upper, rhs, y), SizeError);
}

TEST_CASE("params validation names the field")
{
    Params p;
    CHECK_NOTHROW(p.validate());
    p.alpha = 0;
    CHECK_THROWS_WITH_AS(p.validate(), "physics.alpha must be positive", ValidationError);
    p.alpha = 1;
    p.cfl = 1.5;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("momentum: rest equilibrium stays at rest")
{
    Grid1D const g(16, 1.0);
    auto const law = PressureLaw::isentropic(1.4, 1.0, 1.0);
    Field const rho(16, 1.3);
    Field const c(16, 1.3);
    Field const u(17, 0.0);
    auto const p = uniform_pressure(law, rho);
    Params const params;
    auto const next = step_momentum(g, {rho, rho, u, c, p}, params, 1e-3);
    for (double v : next)
        CHECK(v == 0.0);
}

TEST_CASE("momentum: Korteweg coupling accelerates by alpha grad c")
{
    Grid1D const g(32, 1.0);
    Params params;
    params.mu = 1e-12;
    params.lambda = 1e-12;
    params.alpha = 2.0;
    double const a = 0.7;
    double const dt = 1e-4;
    Field const rho(32, 1.0);
    Field const p(32, 0.0);
    Field const u(33, 0.0);
    Field c(32);
    for (std::size_t i = 0; i < 32; ++i)
        c[i] = a * g.center(i);
    auto const next = step_momentum(g, {rho, rho, u, c, p}, params, dt);
    CHECK(next.front() == 0.0);
    CHECK(next.back() == 0.0);
    for (std::size_t j = 1; j < 32; ++j)
        CHECK(next[j] / dt == doctest::Approx(params.alpha * a).epsilon(1e-8));
}

TEST_CASE("momentum: strong viscosity reduces to backward-Euler diffusion")
{
    Grid1D const g(24, 1.0);
    Params params;
    params.mu = 500;
    params.lambda = 1;
    double const dt = 1e-3;
    Field const rho(24, 1.0);
    Field const c(24, 1.0);
    Field const p(24, 0.0);
    Field u(25, 0.0);
    for (std::size_t j = 1; j < 24; ++j)
        u[j] = 1e-7 * std::sin(M_PI * g.face(j));
    auto const next = step_momentum(g, {rho, rho, u, c, p}, params, dt);

    double const d = dt * params.viscosity() / (g.dx() * g.dx());
    Field lower(23, -d);
    Field upper(23, -d);
    Field diag(23, 1 + 2 * d);
    Field rhs(u.begin() + 1, u.end() - 1);
    Field expected(23);
    solve_tridiagonal(lower, diag, upper, rhs, expected);
    for (std::size_t k = 0; k < 23; ++k)
        CHECK(next[k + 1] == doctest::Approx(expected[k]).epsilon(1e-6));
}

TEST_CASE("momentum rejects non-finite input")
{
    Grid1D const g(8, 1.0);
    Field const rho(8, 1.0);
    Field p(8, 0.0);
    p[3] = NAN;
    Field const u(9, 0.0);
    CHECK_THROWS_AS(step_momentum(g, {rho, rho, u, rho, p}, Params{}, 1e-3), BlowUp);
}

TEST_CASE("order parameter steps")
{
    Grid1D const g(10, 1.0);
    Params params;
    SUBCASE("fixed point")
    {
        Field const k(10, 0.8);
        for (double v : step_order_parameter(g, k, k, params, 0.3))
            CHECK(v == doctest::Approx(0.8).epsilon(1e-15));
    }
    SUBCASE("scalar backward Euler")
    {
        params.alpha = 2;
        params.beta = 1;
        for (double v : step_order_parameter(g, Field(10, 1.0), Field(10, 0.0), params, 0.5))
            CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("vanishing diffusion is pointwise")
    {
        params.kappa = 1e-14;
        params.alpha = 3;
        params.beta = 0.5;
        double const dt = 0.01;
        Field rho(10);
        Field c(10);
        for (std::size_t i = 0; i < 10; ++i)
        {
            rho[i] = 1 + 0.1 * static_cast<double>(i);
            c[i] = std::cos(static_cast<double>(i));
        }
        auto const next = step_order_parameter(g, rho, c, params, dt);
        for (std::size_t i = 0; i < 10; ++i)
        {
            double const expected = (params.beta * c[i] + params.alpha * dt * rho[i])
                                    / (params.beta + params.alpha * dt);
            CHECK(next[i] == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    SUBCASE("mean obeys the scalar recurrence")
    {
        params.alpha = 1.7;
        params.beta = 0.4;
        double const dt = 0.02;
        Field rho(10);
        Field c(10);
        for (std::size_t i = 0; i < 10; ++i)
        {
            rho[i] = 1 + std::sin(static_cast<double>(i));
            c[i] = 0.3 * static_cast<double>(i);
        }
        auto const next = step_order_parameter(g, rho, c, params, dt);
        double const m_rho = integrate(g, rho);
        double const m_c = integrate(g, c);
        double const expected = (params.beta * m_c + params.alpha * dt * m_rho) / (params.beta + params.alpha * dt);
        CHECK(integrate(g, next) == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("uniform in, uniform out")
    {
        auto const next = step_order_parameter(g, Field(10, 2.0), Field(10, -1.0), params, 0.1);
        for (double v : next)
            CHECK(v == doctest::Approx(next[0]).epsilon(1e-15));
    }
}

TEST_CASE("energy functional")
{
    Grid1D const g(16, 1.0);
    auto const law = PressureLaw::isentropic(2.0, 1.0, 2.0);
    Params params;
    params.alpha = 2;
    FluidState s{Field(16, 1.0), Field(17, 0.0), Field(16, 1.0), 0.0};
    CHECK(std::abs(total_energy(g, s, law, params).total()) < 1e-15);

    s.c.assign(16, 0.0);
    auto const e = total_energy(g, s, law, params);
    CHECK(e.total() == doctest::Approx(1.0));
    CHECK(e.coupling == doctest::Approx(1.0));

    for (std::size_t j = 1; j < 16; ++j)
        s.u[j] = std::sin(M_PI * g.face(j));
    auto const e1 = total_energy(g, s, law, params);
    for (auto& v : s.u)
        v *= 2;
    auto const e2 = total_energy(g, s, law, params);
    CHECK(e2.kinetic == doctest::Approx(4 * e1.kinetic));
    CHECK(e2.potential_w == e1.potential_w);
    CHECK(e2.coupling == e1.coupling);
    CHECK(e2.gradient == e1.gradient);
}

TEST_CASE("energy budget of a resting trajectory")
{
    Grid1D const g(8, 1.0);
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    params.alpha = 0.05;
    std::vector<FluidState> traj;
    for (int k = 0; k < 4; ++k)
        traj.push_back({Field(8, 2.0), Field(9, 0.0), Field(8, 2.0), 0.1 * k});
    auto const rows = energy_budget(g, traj, law, params);
    REQUIRE(rows.size() == 4);
    for (auto const& r : rows)
        CHECK(r.energy.defect() == 0.0);
    std::vector<FluidState> const one{traj.front()};
    CHECK_THROWS_AS(energy_budget(g, one, law, params), DomainError);
}
