#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "spraylab/errors.hpp"
#include "spraylab/pressure.hpp"

using namespace spraylab;

namespace {

std::vector<PressureLaw> builtin_laws()
{
    std::vector<PressureLaw> laws;
    laws.push_back(PressureLaw::isentropic(2.0, 1.0, 2.0));
    laws.push_back(PressureLaw::isentropic(1.4, 1.0, 0.5));
    laws.push_back(PressureLaw::reference_cubic(0.05));
    laws.push_back(PressureLaw::tabulated({0.0, 0.5, 1.0, 2.0, 4.0}, {0.0, 0.2, 0.6, 1.8, 6.0}, 2.0, 0.75, 1.0));
    return laws;
}

}  // namespace

TEST_CASE("artificial pressure adds alpha r^2 / 2")
{
    auto const law = PressureLaw::isentropic(2.0, 1.0, 2.0);
    CHECK(law.peff(1.0) == doctest::Approx(2.0));
    CHECK(law.dpeff(1.0) == doctest::Approx(4.0));
    for (auto const& l : builtin_laws())
    {
        CHECK(l.pressure(0.0) == 0.0);
        CHECK(l.peff(0.0) == 0.0);
        for (double r : {0.1, 0.7, 3.3, 17.0})
            CHECK(l.peff(r) - l.pressure(r) == doctest::Approx(0.5 * l.alpha() * r * r).epsilon(1e-14));
    }
}

TEST_CASE("negative density is outside the domain")
{
    auto const law = PressureLaw::isentropic(2.0, 1.0, 1.0);
    CHECK_THROWS_AS(law.pressure(-1e-3), DomainError);
    CHECK_THROWS_AS(law.potential(-1.0), DomainError);
}

TEST_CASE("reference cubic has a flat point at the lower spinodal density")
{
    auto const law = PressureLaw::reference_cubic(0.05);
    CHECK(std::abs(law.dpressure(1.7787)) < 1e-4);
}

TEST_CASE("potential closed forms")
{
    auto const law = PressureLaw::isentropic(2.0, 1.0, 1.0);
    CHECK(law.potential(2.0) == doctest::Approx(2.0));
    for (auto const& l : builtin_laws())
        CHECK(std::abs(l.potential(1.0)) < 1e-12);
    // Closed form and quadrature agree.
    auto const cubic = PressureLaw::reference_cubic(0.05);
    for (double r : {0.05, 0.5, 1.3, 4.0, 20.0})
        CHECK(cubic.potential(r) == doctest::Approx(cubic.potential_by_quadrature(r)).epsilon(1e-9));
}

TEST_CASE("pressure is recovered from the potential")
{
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    for (auto const& law : builtin_laws())
    {
        double worst = 0;
        for (int k = 0; k < 1000; ++k)
        {
            double const r = dist(rng);
            double const h = 1e-6 * std::max(1.0, r);
            double const dw = (law.potential(r + h) - law.potential(std::max(r - h, 0.0)))
                              / (r + h - std::max(r - h, 0.0));
            double const p = law.pressure(r);
            worst = std::max(worst, std::abs(p - (dw * r - law.potential(r))) / (1 + std::abs(p)));
        }
        INFO("law ", to_string(law.kind()));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("growth bound r^gamma <= c1 + c2 W(r) holds on a sample")
{
    // Constants fitted on [2, 50] where W grows like r^gamma; checked at r = 1.3.
    auto const law = PressureLaw::isentropic(2.0, 1.0, 1.0);
    double c2 = 0;
    for (double r = 2; r <= 50; r += 0.5)
        c2 = std::max(c2, std::pow(r, law.gamma()) / law.potential(r));
    double const c1 = 2 * std::pow(2.0, law.gamma());
    CHECK(std::pow(1.3, law.gamma()) <= c1 + c2 * law.potential(1.3));
}

TEST_CASE("spinodal interval")
{
    auto const info = spinodal(PressureLaw::reference_cubic(0.05));
    REQUIRE(info.exists);
    CHECK(info.r1 == doctest::Approx(0.55 * 3.234).epsilon(1e-9));
    CHECK(info.r2 == doctest::Approx((0.55 + 2.0 / 3.0) * 3.234).epsilon(1e-9));
    CHECK(std::abs(info.r1 - 1.7787) < 1e-3);
    CHECK(std::abs(info.r2 - 3.9347) < 1e-3);
    auto const law = PressureLaw::reference_cubic(0.05);
    CHECK(std::abs(law.dpressure(info.r1)) < 1e-8);
    CHECK(std::abs(law.dpressure(info.r2)) < 1e-8);
    for (int k = 1; k < 100; ++k)
        CHECK(law.dpressure(info.r1 + (info.r2 - info.r1) * k / 100.0) < 0);

    CHECK_FALSE(spinodal(PressureLaw::isentropic(1.4, 1.0, 1.0)).exists);
    // k = 0 leaves Phat' = 3 (x - x0)^2, which touches zero without changing sign.
    std::vector<double> const monotone{3.234, 0.55, 0.0, 0.468};
    CHECK_FALSE(spinodal(PressureLaw::vdw_cubic(monotone, 0.05)).exists);
}

TEST_CASE("monotonization threshold")
{
    CHECK(monotonization_alpha(PressureLaw::isentropic(1.4, 1.0, 1.0)) == 0.0);

    // Stationarity of -Phat'(x)/x in u = x - 0.55: 3u^2 + 3.3u - 1.1 = 0.
    double const s = 3.234;
    double const u = (-3.3 + std::sqrt(3.3 * 3.3 + 4 * 3 * 1.1)) / 6;
    double const x = u + 0.55;
    double const oracle = -(3 * u * u - 2 * u) / (x * s * s);
    double const a_star = monotonization_alpha(PressureLaw::reference_cubic(0.05));
    CHECK(a_star == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(std::abs(a_star - 0.0375) < 5e-4);

    auto const right_panel = PressureLaw::reference_cubic(0.5 / (s * s));
    CHECK(right_panel.alpha() == doctest::Approx(0.0478).epsilon(1e-3));
    for (double r = 0; r <= 50; r += 0.01)
        CHECK(right_panel.dpeff(r) >= 0);
}

TEST_CASE("law construction rejects inadmissible parameters")
{
    CHECK_THROWS_AS(PressureLaw::isentropic(1.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(PressureLaw::isentropic(2.0, 1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(PressureLaw::isentropic(2.0, -1.0, 1.0), ValidationError);
    // A decreasing table drives P negative.
    CHECK_THROWS(PressureLaw::tabulated({0.0, 1.0, 2.0, 3.0}, {0.0, -0.5, 1.0, 3.0}, 2.0, 1.0, 1.0));
    CHECK(to_string(law_kind_from_string("vdw-cubic")) == "vdw-cubic");
    CHECK_THROWS_AS(law_kind_from_string("ideal"), ValidationError);
}
