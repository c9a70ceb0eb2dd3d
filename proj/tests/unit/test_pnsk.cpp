#include <cmath>
#include <vector>

#include "doctest.h"
#include "spraylab/errors.hpp"
#include "spraylab/pnsk.hpp"

using namespace spraylab;

namespace {

FluidState rest(std::size_t n, double level)
{
    return {Field(n, level), Field(n + 1, 0.0), Field(n, level), 0.0};
}

}  // namespace

TEST_CASE("continuity: no motion, no change")
{
    Grid1D const g(12, 1.0);
    auto s = rest(12, 1.0);
    for (std::size_t i = 0; i < 12; ++i)
        s.rho[i] = 1 + 0.1 * static_cast<double>(i);
    auto const next = step_continuity(g, s, 0.01);
    CHECK(next == s.rho);
}

TEST_CASE("continuity conserves mass")
{
    Grid1D const g(40, 1.0);
    auto s = rest(40, 1.0);
    for (std::size_t j = 1; j < 40; ++j)
        s.u[j] = std::sin(7 * g.face(j)) + 0.3;
    double const dt = 0.4 * g.dx() / 1.3;
    auto const next = step_continuity(g, s, dt);
    CHECK(std::abs(integrate(g, next) - integrate(g, s.rho)) <= 1e-14 * integrate(g, s.rho));
    for (double r : next)
        CHECK(r >= 0);
}

TEST_CASE("continuity at unit Courant number shifts a pulse by one cell")
{
    Grid1D const g(10, 1.0);
    double const dt = 0.01;
    auto s = rest(10, 0.0);
    s.rho[3] = 1.0;
    for (std::size_t j = 1; j < 10; ++j)
        s.u[j] = g.dx() / dt;
    auto const next = step_continuity(g, s, dt);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(next[i] == doctest::Approx(i == 4 ? 1.0 : 0.0));
}

TEST_CASE("continuity rejects Courant violations")
{
    Grid1D const g(10, 1.0);
    auto s = rest(10, 1.0);
    s.u[5] = 1.0;
    CHECK_THROWS_AS(step_continuity(g, s, 2 * g.dx()), StepRejected);
}

TEST_CASE("rest equilibrium is a fixed point")
{
    Grid1D const g(16, 1.0);
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    params.alpha = 0.05;
    auto const s = rest(16, 2.5);
    auto const next = step_pnsk(g, s, law, params, 1e-3);
    CHECK(next.rho == s.rho);
    CHECK(next.u == s.u);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(next.c[i] == doctest::Approx(s.c[i]).epsilon(1e-15));
    CHECK(next.t == doctest::Approx(1e-3));

    std::vector<double> const times{0.01, 0.02};
    auto const traj = run_pnsk(g, s, law, params, times);
    REQUIRE(traj.snapshots.size() == 3);
    for (auto const& snap : traj.snapshots)
    {
        CHECK(snap.rho == s.rho);
        CHECK(snap.u == s.u);
    }
    CHECK(traj.snapshots[1].t == 0.01);
    CHECK(traj.snapshots[2].t == 0.02);
}

TEST_CASE("zero final time returns the initial state")
{
    Grid1D const g(8, 1.0);
    auto const law = PressureLaw::isentropic(1.4, 1.0, 1.0);
    auto const s = rest(8, 1.0);
    auto const traj = run_pnsk(g, s, law, Params{}, std::vector<double>{});
    REQUIRE(traj.snapshots.size() == 1);
    CHECK(traj.steps == 0);
    auto const traj0 = run_pnsk(g, s, law, Params{}, std::vector<double>{0.0});
    CHECK(traj0.snapshots.size() == 1);
    CHECK(traj0.steps == 0);
}

TEST_CASE("norm exponents")
{
    auto const e = NormExponents::from_gamma(1.4);
    CHECK(e.gamma_tilde == 2.0);
    CHECK(e.theta == doctest::Approx(1.0 / 3.0));
    CHECK(e.delta == doctest::Approx(7.0 / 6.0));
    auto const e3 = NormExponents::from_gamma(3.0);
    CHECK(e3.theta == 1.0);
    CHECK(e3.delta == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("c mean reference")
{
    Params params;
    params.alpha = 2;
    params.beta = 1;
    CHECK(c_mean_reference(0.0, 1.0, params, std::log(2.0) / 2) == doctest::Approx(0.5));
    CHECK(c_mean_reference(1.2, 1.2, params, 3.0) == doctest::Approx(1.2));
    CHECK(c_mean_reference(0.0, 1.0, params, 1e3) == doctest::Approx(1.0));
}

TEST_CASE("smooth run keeps mass, positivity and tracks the c mean")
{
    Grid1D const g(64, 1.0);
    auto const law = PressureLaw::isentropic(1.4, 1.0, 1.0);
    Params params;
    params.dt_max = 2e-4;
    FluidState s = rest(64, 1.0);
    for (std::size_t i = 0; i < 64; ++i)
    {
        s.rho[i] = 1 + 0.3 * std::cos(M_PI * g.center(i));
        s.c[i] = 0.5;
    }
    std::vector<double> const times{0.05, 0.1};
    auto const traj = run_pnsk(g, s, law, params, times);
    CHECK(traj.max_mass_drift <= 1e-12);
    double worst = 0;
    for (auto const& row : traj.monitors)
    {
        CHECK(row.rho_min >= 0);
        worst = std::max(worst, std::abs(row.c_integral - row.c_reference) / std::abs(row.c_reference));
    }
    CHECK(worst <= 5 * params.dt_max * params.alpha / params.beta * 0.1);
}

TEST_CASE("blow-up aborts with the last good state")
{
    Grid1D const g(8, 1.0);
    auto const law = PressureLaw::isentropic(2.0, 1.0, 1.0);
    auto s = rest(8, 1.0);
    s.u[4] = NAN;
    // validate() accepts NaN interior velocity, the first step must abort.
    RunOptions opts;
    opts.fixed_dt = 1e-3;
    CHECK_THROWS_AS(run_pnsk(g, s, law, Params{}, std::vector<double>{0.01}, opts), RunAborted);
}
