#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "spraylab/config.hpp"
#include "spraylab/errors.hpp"
#include "spraylab/report.hpp"
#include "spraylab/study.hpp"

using namespace spraylab;

namespace {

std::string error_of(const std::string& text)
{
    try
    {
        parse_config_text(text);
    }
    catch (const ValidationError& e)
    {
        return e.what();
    }
    return "";
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

char const* small_study = R"({
  "domain": {"L": 1.0, "n_cells": 32},
  "initial": {"oscillation": {"n_interfaces": 2}, "u0": {"kind": "sine", "amplitude": 0.1}},
  "numerics": {"t_end": 0.01, "dt_max": 1e-3},
  "study": {"n_ladder": [1, 2, 4]}
})";

}  // namespace

TEST_CASE("empty config takes every default")
{
    auto const cfg = parse_config_text("{}");
    CHECK(cfg.length == 1.0);
    CHECK(cfg.n_cells == 512);
    CHECK(cfg.params.alpha == 1.0);
    CHECK(cfg.pressure.kind == LawKind::isentropic);
    CHECK(cfg.pressure.gamma == 1.4);
    CHECK(cfg.oscillation.n_interfaces == 4);
    CHECK(cfg.window_h == 1.0 / 16);
    CHECK(cfg.output_times == std::vector<double>{0.0625, 0.125, 0.1875, 0.25});
    CHECK(cfg.n_ladder == std::vector<std::size_t>{4, 8, 16, 32});
    CHECK(cfg.seed == 0);

    // The echo parses back to the same configuration.
    auto const echo = dump_config(cfg);
    CHECK(contains(echo, "\"window_h\": 0.0625"));
    CHECK(dump_config(parse_config_text(echo)) == echo);
}

TEST_CASE("config validation names the key")
{
    CHECK(error_of(R"({"physics": {"alpha": 0}})") == "physics.alpha must be positive");
    CHECK(error_of(R"({"physics": {"alpha": -1}})") == "physics.alpha must be positive");
    CHECK(contains(error_of(R"({"domain": {"n_cells": 16}, "study": {"n_ladder": [4, 9]}})"),
                   "gen_oscillating_density"));
    CHECK(contains(error_of(R"({"domain": {"n_cells": 16}, "study": {"n_ladder": [4, 9]}})"), "study.n_ladder"));
    CHECK(error_of(R"({"numerics": {"cfl": 0.5, "sigma": 2}})") == "unknown key 'numerics.sigma'");
    CHECK(error_of(R"({"extra": 1})") == "unknown key 'extra'");
    CHECK(contains(error_of(R"({"domain": {"n_cells": -4}})"), "domain.n_cells"));
    CHECK(contains(error_of(R"({"initial": {"u0": {"kind": "swirl"}}})"), "initial.u0.kind"));
    CHECK(contains(error_of(R"({"pressure": {"alpha": 2}})"), "pressure.alpha"));
    CHECK(contains(error_of(R"({"pressure": {"kind": "vdw-cubic", "gamma": 2}})"), "pressure.gamma"));
    CHECK(contains(error_of(R"({"study": {"observables": ["xi", "entropy"]}})"), "study.observables"));
    CHECK(contains(error_of(R"({"numerics": {"window_h": 1e-5}})"), "numerics.window_h"));
    CHECK(contains(error_of(R"({"numerics": {"output_times": [0.2, 0.1]}})"), "numerics.output_times"));
}

TEST_CASE("syntax errors report the line")
{
    auto const msg = error_of("{\n  \"domain\": {\n    \"L\": 1.0,,\n  }\n}");
    CHECK(contains(msg, "<config>:3:"));
}

TEST_CASE("law blocks")
{
    auto const vdw = parse_config_text(R"({"pressure": {"kind": "vdw-cubic"}, "physics": {"alpha": 0.05}})");
    CHECK(vdw.pressure.coefficients == std::vector<double>{3.234, 0.55, 1.0, 0.468});
    CHECK(vdw.pressure.gamma == 3.0);
    CHECK(vdw.law().alpha() == 0.05);

    auto const tab = parse_config_text(R"({"pressure": {"kind": "tabulated", "densities": [0, 1, 2, 3],
        "pressures": [0, 1, 4, 9], "gamma": 2, "p_inf": 2}})");
    CHECK(tab.law().pressure(1.5) > 1.0);
    CHECK(contains(error_of(R"({"pressure": {"densities": [0, 1]}})"), "tabulated"));
}

TEST_CASE("initial data")
{
    auto cfg = parse_config_text(R"({"domain": {"n_cells": 64},
        "initial": {"u0": {"kind": "noise", "amplitude": 0.5, "modes": 3}}, "seed": 7})");
    Grid1D const g = cfg.grid();
    auto const u7 = initial_velocity(cfg, g);
    CHECK(u7.front() == 0.0);
    CHECK(u7.back() == 0.0);
    CHECK(initial_velocity(cfg, g) == u7);
    cfg.seed = 8;
    CHECK(initial_velocity(cfg, g) != u7);
    for (double u : u7)
        CHECK(std::abs(u) <= 0.5);

    auto const s = detailed_initial_state(cfg, 8);
    CHECK(s.rho.size() == 64);
    CHECK(s.c == Field(64, cfg.oscillation.mean_density()));
    auto const e = effective_initial_state(cfg);
    CHECK(e.nu.front().size() == 2);
    CHECK(e.rho.front() == doctest::Approx(1.1));
}

TEST_CASE("convergence study")
{
    auto cfg = parse_config_text(small_study);

    SUBCASE("single rung")
    {
        cfg.n_ladder = {1};
        auto const report = run_convergence(cfg);
        REQUIRE(report.rows.size() == 1);
        auto const& row = report.rows.front();
        CHECK(row.ok);
        CHECK(report.effective.ok);
        for (auto const& name : {"xi", "peff", "bounded"})
            CHECK(std::isfinite(row.distance.at(name)));
        CHECK(std::isfinite(row.evf_gap));
        CHECK(std::isfinite(row.e0));
        CHECK(std::isfinite(row.rho_l_gamma_tilde_plus_theta));
        CHECK(std::isfinite(row.peff_l_delta));
        CHECK(row.steps > 0);
    }
    SUBCASE("exponents follow gamma")
    {
        auto const report = run_convergence(cfg);
        CHECK(report.exponents.gamma_tilde == 2.0);
        CHECK(report.exponents.theta == doctest::Approx(1.0 / 3));
        CHECK(report.exponents.delta == doctest::Approx(7.0 / 6));
        std::ostringstream os;
        write_convergence_report(os, report, cfg);
        CHECK(contains(os.str(), "\"schema_version\": 1"));
        CHECK(contains(os.str(), "\"gamma_tilde\": 2.0"));
    }
    SUBCASE("report does not depend on the thread count")
    {
        std::ostringstream one, three;
        write_convergence_report(one, run_convergence(cfg, 1), cfg);
        write_convergence_report(three, run_convergence(cfg, 3), cfg);
        CHECK(one.str() == three.str());
    }
    SUBCASE("a failing run is recorded in its row")
    {
        cfg.params.dt_max = 10;
        cfg.params.cfl = 1;
        cfg.params.mu = 1e-3;
        cfg.params.lambda = 1e-3;
        cfg.fixed_dt = 0.5;
        cfg.params.t_end = 1;
        cfg.output_times = {1};
        auto const report = run_convergence(cfg);
        REQUIRE(report.rows.size() == 3);
        for (auto const& row : report.rows)
        {
            CHECK_FALSE(row.ok);
            CHECK_FALSE(row.error.empty());
        }
    }
}

TEST_CASE("csv writers")
{
    Grid1D const g(4, 1.0);
    FluidState s{{1.0, 2.0, 2.0, 2.0}, {0.0, 0.5, 0.0, 0.0, 0.0}, {1.5, 1.5, 1.5, 1.5}, 0.25};
    std::ostringstream fields;
    write_fields_csv(fields, g, s);
    CHECK(fields.str().starts_with("t,x,rho,u_center,c\n0.25,0.125,1,0.25,1.5\n0.25,0.375,2,0.25,1.5\n"));

    EffectiveState e;
    e.nu = {AtomicMeasure({{0.75, 2.0}, {0.25, 1.0}}), AtomicMeasure::dirac(3.0)};
    e.u = {0.0, 0.5, 0.0};
    e.c = {1.5, 1.5};
    e.t = 0.5;
    std::ostringstream measure, cdf_out;
    write_measure_csv(measure, g, e);
    CHECK(measure.str() == "t,x_cell,atom,weight,xi\n0.5,0.125,0,0.25,1\n0.5,0.125,1,0.75,2\n0.5,0.375,0,1,3\n");
    write_cdf_csv(cdf_out, g, e);
    CHECK(cdf_out.str() == "t,x_cell,xi,f\n0.5,0.125,1,0.25\n0.5,0.125,2,1\n0.5,0.375,3,1\n");
}
