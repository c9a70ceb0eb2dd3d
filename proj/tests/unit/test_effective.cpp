#include <cmath>
#include <vector>

#include "doctest.h"
#include "spraylab/effective.hpp"
#include "spraylab/errors.hpp"

using namespace spraylab;

namespace {

PressureLaw square_law()
{
    return PressureLaw::isentropic(2.0, 0.5, 1.0);
}

}  // namespace

TEST_CASE("advection without motion is the identity")
{
    Grid1D const g(6, 1.0);
    MeasureField nu;
    for (int i = 0; i < 6; ++i)
        nu.push_back(AtomicMeasure({{0.4, 1.0 + i}, {0.6, 2.0 + i}}));
    Field const u(7, 0.0);
    CHECK(advect_measure(g, nu, u, 0.1) == nu);
}

TEST_CASE("advection of a uniform single atom only rescales weights")
{
    Grid1D const g(8, 1.0);
    MeasureField const nu(8, AtomicMeasure::dirac(1.3));
    Field u(9, 0.0);
    for (std::size_t j = 1; j < 8; ++j)
        u[j] = std::sin(M_PI * g.face(j));
    auto next = advect_measure(g, nu, u, 0.01);
    double total = 0;
    for (auto& m : next)
    {
        REQUIRE(m.size() == 1);
        CHECK(m.atoms()[0].xi == 1.3);
        total += m.total_weight();
        m.renormalize();
        CHECK(m.atoms()[0].weight == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(total == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("donor cell moves a fraction of each atom")
{
    Grid1D const g(4, 1.0);
    MeasureField nu(4);
    nu[1] = AtomicMeasure({{0.4, 1.0}, {0.6, 2.0}});
    Field u(5, 0.0);
    double const dt = 0.1;
    u[2] = 0.25 * g.dx() / dt;
    auto const next = advect_measure(g, nu, u, dt);
    REQUIRE(next[2].size() == 2);
    CHECK(next[2].atoms()[0].weight == doctest::Approx(0.1));
    CHECK(next[2].atoms()[1].weight == doctest::Approx(0.15));
    CHECK(next[1].atoms()[0].weight == doctest::Approx(0.3));
    CHECK(next[0].empty());
    CHECK(next[3].empty());

    u[2] = 2 * g.dx() / dt;
    CHECK_THROWS_AS(advect_measure(g, nu, u, dt), StepRejected);
}

TEST_CASE("reaction of a single atom")
{
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    auto const m = AtomicMeasure::dirac(1.0);
    auto const still = react_measure(m, 0.0, law, params, 0.01);
    CHECK(still.measure == m);
    CHECK(still.defect == 0.0);

    double const d = 0.8;
    double const dt = 1e-3;
    auto const moved = react_measure(m, d, law, params, dt);
    REQUIRE(moved.measure.size() == 1);
    CHECK(moved.measure.atoms()[0].xi == doctest::Approx(1 - d * dt).epsilon(1e-6));
    CHECK(moved.measure.total_weight() == 1.0);
}

TEST_CASE("two atoms drift toward equal pressure")
{
    auto const law = square_law();
    Params params;
    params.mu = 0.25;
    params.lambda = 0.5;
    AtomicMeasure const m({{0.5, 1.0}, {0.5, 3.0}});
    auto const v = xi_velocity(m, 0.0, law, params);
    CHECK(v[0] == doctest::Approx(4.0));
    CHECK(v[1] == doctest::Approx(-12.0));
    auto const r = react_measure(m, 0.0, law, params, 1e-3);
    CHECK(r.measure.atoms()[0].xi > 1.0);
    CHECK(r.measure.atoms()[1].xi < 3.0);
    CHECK(r.measure.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reaction defect is second order in dt")
{
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    AtomicMeasure const m({{0.3, 0.4}, {0.5, 2.0}, {0.2, 4.5}});
    std::vector<double> defects;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4})
    {
        // The measure as it leaves the transport substep: weight 1 - dt divu.
        double const divu = 0.7;
        AtomicMeasure in = m;
        for (auto& a : in.mutable_atoms())
            a.weight *= 1 - dt * divu;
        defects.push_back(std::abs(react_measure(in, divu, law, params, dt).defect));
    }
    for (std::size_t k = 1; k < defects.size(); ++k)
        CHECK(std::log2(defects[k - 1] / defects[k]) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("effective rest equilibrium")
{
    Grid1D const g(16, 1.0);
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    params.alpha = 0.05;
    Field const u(17, 0.0);
    Field const c(16, 2.2);
    auto const s = uniform_state(g, AtomicMeasure::dirac(2.2), u, c, law);
    CHECK_NOTHROW(s.validate(g, params));
    auto const next = step_effective(g, s, law, params, 1e-3);
    CHECK(next.nu == s.nu);
    CHECK(next.u == s.u);
    CHECK(next.rho == s.rho);

    std::vector<double> const times{0.01, 0.02};
    auto const traj = run_effective(g, s, law, params, times);
    REQUIRE(traj.snapshots.size() == 3);
    for (auto const& snap : traj.snapshots)
    {
        CHECK(snap.nu == s.nu);
        CHECK(snap.u == s.u);
    }
    auto const empty = run_effective(g, s, law, params, std::vector<double>{});
    CHECK(empty.snapshots.size() == 1);
}

TEST_CASE("uniform two-atom measure keeps two atoms")
{
    Grid1D const g(32, 1.0);
    auto const law = PressureLaw::reference_cubic(0.05);
    Params params;
    params.alpha = 0.05;
    params.compression = false;
    AtomicMeasure const m({{0.5, 0.6}, {0.5, 4.5}});
    Field const u(33, 0.0);
    Field const c(32, 2.0);
    auto const s = uniform_state(g, m, u, c, law);
    std::vector<double> const times{0.05, 0.1};
    auto const traj = run_effective(g, s, law, params, times);
    for (auto const& row : traj.monitors)
        CHECK(row.max_atoms == 2);
    for (auto const& snap : traj.snapshots)
        for (auto const& cell : snap.nu)
            CHECK(cell.size() == 2);
    // The atoms relax toward a common pressure.
    auto const& last = traj.snapshots.back().nu[0].atoms();
    CHECK(std::abs(law.peff(last[1].xi) - law.peff(last[0].xi))
          < std::abs(law.peff(4.5) - law.peff(0.6)));
}

TEST_CASE("state validation")
{
    Grid1D const g(4, 1.0);
    auto const law = square_law();
    Params const params;
    auto s = uniform_state(g, AtomicMeasure::dirac(1.0), Field(5, 0.0), Field(4, 1.0), law);
    CHECK_NOTHROW(s.validate(g, params));
    s.rho[1] = 2.0;
    CHECK_THROWS_AS(s.validate(g, params), DomainError);
    s.refresh(law);
    s.nu[2].mutable_atoms()[0].weight = 0.5;
    s.refresh(law);
    CHECK_THROWS_AS(s.validate(g, params), DomainError);
}
