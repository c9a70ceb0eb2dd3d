#include "spraylab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spraylab/errors.hpp"

namespace spraylab {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string_view to_string(VelocityKind k)
{
    switch (k)
    {
        case VelocityKind::zero:
            return "zero";
        case VelocityKind::sine:
            return "sine";
        case VelocityKind::noise:
            return "noise";
    }
    return "zero";
}

std::string_view to_string(OrderKind k)
{
    return k == OrderKind::mean ? "mean" : "constant";
}

std::string_view to_string(InitialMeasure m)
{
    return m == InitialMeasure::limit ? "limit" : "dirac";
}

std::string_view to_string(Profile p)
{
    return p == Profile::blocks ? "blocks" : "smoothed";
}

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Section
{
  public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object())
        {
            throw ValidationError(path_ + " must be an object");
        }
    }

    std::string key_path(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    double number(const std::string& key, double fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_number())
            throw ValidationError(key_path(key) + " must be a number");
        return v->get<double>();
    }

    std::size_t count(const std::string& key, std::size_t fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_number_unsigned())
            throw ValidationError(key_path(key) + " must be a non-negative integer");
        return v->get<std::size_t>();
    }

    std::string text(const std::string& key, std::string fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_string())
            throw ValidationError(key_path(key) + " must be a string");
        return v->get<std::string>();
    }

    bool flag(const std::string& key, bool fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_boolean())
            throw ValidationError(key_path(key) + " must be true or false");
        return v->get<bool>();
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_array())
            throw ValidationError(key_path(key) + " must be an array of numbers");
        std::vector<double> out;
        for (auto const& e : *v)
        {
            if (!e.is_number())
                throw ValidationError(key_path(key) + " must be an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_array())
            throw ValidationError(key_path(key) + " must be an array of positive integers");
        std::vector<std::size_t> out;
        for (auto const& e : *v)
        {
            if (!e.is_number_unsigned())
                throw ValidationError(key_path(key) + " must be an array of positive integers");
            out.push_back(e.get<std::size_t>());
        }
        return out;
    }

    std::vector<std::string> texts(const std::string& key, std::vector<std::string> fallback)
    {
        auto const* v = find(key);
        if (v == nullptr)
            return fallback;
        if (!v->is_array())
            throw ValidationError(key_path(key) + " must be an array of strings");
        std::vector<std::string> out;
        for (auto const& e : *v)
        {
            if (!e.is_string())
                throw ValidationError(key_path(key) + " must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    /// Nested section; an absent key reads as an empty object.
    Section child(const std::string& key)
    {
        static json const empty = json::object();
        auto const* v = find(key);
        return Section(v == nullptr ? empty : *v, key_path(key));
    }

    void finish() const
    {
        for (auto const& item : node_.items())
        {
            if (!seen_.count(item.key()))
                throw ValidationError("unknown key '" + key_path(item.key()) + "'");
        }
    }

  private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

template<class Enum>
Enum pick(const std::string& value, const std::string& key, std::initializer_list<Enum> options)
{
    std::string allowed;
    for (auto e : options)
    {
        if (to_string(e) == value)
            return e;
        allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(e));
    }
    throw ValidationError(key + " must be one of " + allowed + ", got '" + value + "'");
}

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

RunConfig read(const json& doc)
{
    RunConfig cfg;
    Section root(doc, "");

    {
        auto s = root.child("domain");
        cfg.length = s.number("L", cfg.length);
        cfg.n_cells = s.count("n_cells", cfg.n_cells);
        s.finish();
    }
    {
        auto s = root.child("physics");
        auto& p = cfg.params;
        p.mu = s.number("mu", p.mu);
        p.lambda = s.number("lambda", p.lambda);
        p.kappa = s.number("kappa", p.kappa);
        p.alpha = s.number("alpha", p.alpha);
        p.beta = s.number("beta", p.beta);
        s.finish();
    }
    {
        auto s = root.child("pressure");
        auto& p = cfg.pressure;
        p.kind = law_kind_from_string(s.text("kind", "isentropic"));
        if (p.kind == LawKind::vdw_cubic)
            p.coefficients = {3.234, 0.55, 1.0, 0.468};
        p.coefficients = s.numbers("coefficients", p.coefficients);
        if (p.kind == LawKind::vdw_cubic)
        {
            // Growth exponent and limit are fixed by the cubic itself.
            if (s.find("gamma") != nullptr || s.find("p_inf") != nullptr)
                throw ValidationError("pressure.gamma and pressure.p_inf are implied by a vdw-cubic law");
        }
        else
        {
            p.gamma = s.number("gamma", p.gamma);
            p.p_inf = s.number("p_inf", p.p_inf);
        }
        p.densities = s.numbers("densities", {});
        p.pressures = s.numbers("pressures", {});
        if (auto const* a = s.find("alpha"))
        {
            if (!a->is_number() || a->get<double>() != cfg.params.alpha)
                throw ValidationError("pressure.alpha must equal physics.alpha when given");
        }
        s.finish();
    }
    {
        auto s = root.child("initial");
        {
            auto o = s.child("oscillation");
            auto& spec = cfg.oscillation;
            spec.n_interfaces = o.count("n_interfaces", 4);
            spec.r_vap = o.number("r_vap", spec.r_vap);
            spec.r_liq = o.number("r_liq", spec.r_liq);
            spec.theta = o.number("theta", spec.theta);
            spec.profile = pick(o.text("profile", "blocks"), o.key_path("profile"),
                                {Profile::blocks, Profile::smoothed});
            spec.width = o.number("width", spec.width);
            o.finish();
        }
        cfg.measure = pick(s.text("measure", "limit"), "initial.measure",
                           {InitialMeasure::limit, InitialMeasure::dirac});
        {
            auto u = s.child("u0");
            cfg.u0.kind = pick(u.text("kind", "zero"), "initial.u0.kind",
                               {VelocityKind::zero, VelocityKind::sine, VelocityKind::noise});
            cfg.u0.amplitude = u.number("amplitude", cfg.u0.amplitude);
            cfg.u0.mode = static_cast<int>(u.count("mode", 1));
            cfg.u0.modes = static_cast<int>(u.count("modes", 4));
            u.finish();
        }
        {
            auto c = s.child("c0");
            cfg.c0.kind = pick(c.text("kind", "mean"), "initial.c0.kind", {OrderKind::mean, OrderKind::constant});
            cfg.c0.value = c.number("value", cfg.c0.value);
            c.finish();
        }
        s.finish();
    }
    {
        auto s = root.child("numerics");
        auto& p = cfg.params;
        p.cfl = s.number("cfl", p.cfl);
        p.dt_max = s.number("dt_max", p.dt_max);
        p.t_end = s.number("t_end", p.t_end);
        cfg.output_times = s.numbers("output_times", {});
        p.max_atoms = s.count("max_atoms", p.max_atoms);
        p.atom_merge_eps = s.number("merge_eps", p.atom_merge_eps);
        p.renorm_tol = s.number("renorm_tol", p.renorm_tol);
        p.compression = s.flag("compression", p.compression);
        cfg.window_h = s.number("window_h", cfg.length / 16);
        cfg.fixed_dt = s.number("fixed_dt", 0);
        s.finish();
    }
    {
        auto s = root.child("study");
        cfg.n_ladder = s.counts("n_ladder", cfg.n_ladder);
        cfg.observables = s.texts("observables", cfg.observables);
        s.finish();
    }
    if (auto const* seed = root.find("seed"))
    {
        if (!seed->is_number_unsigned())
            throw ValidationError("seed must be a non-negative integer");
        cfg.seed = seed->get<std::uint64_t>();
    }
    root.finish();

    if (cfg.output_times.empty())
    {
        for (int k = 1; k <= 4; ++k)
            cfg.output_times.push_back(cfg.params.t_end * k / 4);
        if (cfg.params.t_end == 0)
            cfg.output_times = {0.0};
    }
    else if (cfg.output_times.back() < cfg.params.t_end)
    {
        cfg.output_times.push_back(cfg.params.t_end);
    }
    cfg.validate();
    if (cfg.pressure.kind == LawKind::vdw_cubic)
    {
        auto const law = cfg.law();
        cfg.pressure.gamma = law.gamma();
        cfg.pressure.p_inf = law.p_inf();
    }
    return cfg;
}

}  // namespace

//---------------------------------------------------------------------------//
PressureLaw RunConfig::law() const
{
    double const alpha = params.alpha;
    switch (pressure.kind)
    {
        case LawKind::isentropic:
            if (pressure.coefficients.size() != 1)
                throw ValidationError("pressure.coefficients of an isentropic law is [a]");
            return PressureLaw::isentropic(pressure.gamma, pressure.coefficients[0], alpha);
        case LawKind::vdw_cubic:
            return PressureLaw::vdw_cubic(pressure.coefficients, alpha);
        case LawKind::tabulated:
            return PressureLaw::tabulated(pressure.densities, pressure.pressures, pressure.gamma,
                                          pressure.p_inf, alpha);
    }
    throw ValidationError("pressure.kind is not supported");
}

void RunConfig::validate() const
{
    if (!(length > 0) || !std::isfinite(length))
        throw ValidationError("domain.L must be positive");
    if (n_cells < 4)
        throw ValidationError("domain.n_cells must be at least 4");
    params.validate();
    if (pressure.kind != LawKind::tabulated && (!pressure.densities.empty() || !pressure.pressures.empty()))
        throw ValidationError("pressure.densities and pressure.pressures belong to tabulated laws only");
    (void)law();

    oscillation.validate();
    if (2 * oscillation.n_interfaces > n_cells)
    {
        throw ValidationError("initial.oscillation.n_interfaces exceeds n_cells/2 = " + std::to_string(n_cells / 2)
                              + " (gen_oscillating_density needs 2 n_interfaces <= n_cells)");
    }
    if (u0.kind != VelocityKind::zero && !std::isfinite(u0.amplitude))
        throw ValidationError("initial.u0.amplitude must be finite");
    if (u0.mode < 1)
        throw ValidationError("initial.u0.mode must be at least 1");
    if (u0.modes < 1)
        throw ValidationError("initial.u0.modes must be at least 1");
    if (c0.kind == OrderKind::constant && !(c0.value >= 0))
        throw ValidationError("initial.c0.value must be non-negative");

    for (std::size_t k = 0; k < output_times.size(); ++k)
    {
        if (!(output_times[k] >= 0) || output_times[k] > params.t_end
            || (k > 0 && !(output_times[k] > output_times[k - 1])))
        {
            throw ValidationError("numerics.output_times must be increasing within [0, t_end]");
        }
    }
    double const dx = length / static_cast<double>(n_cells);
    if (!(window_h >= dx * (1 - 1e-12)) || window_h > length)
        throw ValidationError("numerics.window_h must lie between one cell width and L");
    if (!(fixed_dt >= 0))
        throw ValidationError("numerics.fixed_dt must be non-negative");

    if (n_ladder.empty())
        throw ValidationError("study.n_ladder must not be empty");
    for (std::size_t n : n_ladder)
    {
        if (n < 1)
            throw ValidationError("study.n_ladder entries must be at least 1");
        if (2 * n > n_cells)
        {
            throw ValidationError("study.n_ladder entry " + std::to_string(n) + " exceeds n_cells/2 = "
                                  + std::to_string(n_cells / 2)
                                  + " (gen_oscillating_density needs 2 n_interfaces <= n_cells)");
        }
    }
    if (observables.empty())
        throw ValidationError("study.observables must not be empty");
    std::set<std::string> seen;
    for (auto const& o : observables)
    {
        if (o != "xi" && o != "peff" && o != "bounded")
            throw ValidationError("study.observables entries must be xi, peff or bounded, got '" + o + "'");
        if (!seen.insert(o).second)
            throw ValidationError("study.observables lists '" + o + "' twice");
    }
}

RunConfig parse_config_text(std::string_view text, std::string_view source)
{
    json doc;
    try
    {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e)
    {
        std::size_t const line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ValidationError(std::string(source) + ":" + std::to_string(line) + ": JSON syntax error: "
                              + e.what());
    }
    return read(doc);
}

RunConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open configuration file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.string());
}

std::string dump_config(const RunConfig& cfg, int indent)
{
    auto const& p = cfg.params;
    ordered_json doc;
    doc["domain"] = {{"L", cfg.length}, {"n_cells", cfg.n_cells}};
    doc["physics"] = {{"mu", p.mu}, {"lambda", p.lambda}, {"kappa", p.kappa}, {"alpha", p.alpha}, {"beta", p.beta}};
    ordered_json pressure = {{"kind", to_string(cfg.pressure.kind)}, {"coefficients", cfg.pressure.coefficients}};
    pressure["gamma"] = cfg.pressure.gamma;
    pressure["p_inf"] = cfg.pressure.p_inf;
    if (cfg.pressure.kind == LawKind::tabulated)
    {
        pressure["densities"] = cfg.pressure.densities;
        pressure["pressures"] = cfg.pressure.pressures;
    }
    doc["pressure"] = pressure;
    auto const& o = cfg.oscillation;
    doc["initial"] = {
        {"oscillation",
         {{"n_interfaces", o.n_interfaces},
          {"r_vap", o.r_vap},
          {"r_liq", o.r_liq},
          {"theta", o.theta},
          {"profile", to_string(o.profile)},
          {"width", o.width}}},
        {"measure", to_string(cfg.measure)},
        {"u0",
         {{"kind", to_string(cfg.u0.kind)},
          {"amplitude", cfg.u0.amplitude},
          {"mode", cfg.u0.mode},
          {"modes", cfg.u0.modes}}},
        {"c0", {{"kind", to_string(cfg.c0.kind)}, {"value", cfg.c0.value}}},
    };
    doc["numerics"] = {
        {"cfl", p.cfl},
        {"dt_max", p.dt_max},
        {"t_end", p.t_end},
        {"output_times", cfg.output_times},
        {"max_atoms", p.max_atoms},
        {"merge_eps", p.atom_merge_eps},
        {"renorm_tol", p.renorm_tol},
        {"compression", p.compression},
        {"window_h", cfg.window_h},
        {"fixed_dt", cfg.fixed_dt},
    };
    doc["study"] = {{"n_ladder", cfg.n_ladder}, {"observables", cfg.observables}};
    doc["seed"] = cfg.seed;
    return doc.dump(indent);
}

//---------------------------------------------------------------------------//
Field initial_velocity(const RunConfig& cfg, const Grid1D& grid)
{
    Field u(grid.n_faces(), 0.0);
    double const k = std::numbers::pi / grid.length();
    std::vector<double> coeff;
    switch (cfg.u0.kind)
    {
        case VelocityKind::zero:
            return u;
        case VelocityKind::sine:
            coeff.assign(static_cast<std::size_t>(cfg.u0.mode), 0.0);
            coeff.back() = 1;
            break;
        case VelocityKind::noise:
        {
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> draw(-1.0, 1.0);
            for (int m = 0; m < cfg.u0.modes; ++m)
                coeff.push_back(draw(rng) / cfg.u0.modes);
            break;
        }
    }
    // Interior faces only: both walls keep u = 0 exactly.
    for (std::size_t j = 1; j + 1 < u.size(); ++j)
    {
        double sum = 0;
        for (std::size_t m = 0; m < coeff.size(); ++m)
            sum += coeff[m] * std::sin(static_cast<double>(m + 1) * k * grid.face(j));
        u[j] = cfg.u0.amplitude * sum;
    }
    return u;
}

Field initial_order_parameter(const RunConfig& cfg, const Grid1D& grid)
{
    double const value = cfg.c0.kind == OrderKind::mean ? cfg.oscillation.mean_density() : cfg.c0.value;
    return Field(grid.n_cells(), value);
}

FluidState detailed_initial_state(const RunConfig& cfg, std::size_t n_interfaces)
{
    Grid1D const grid = cfg.grid();
    OscillationSpec spec = cfg.oscillation;
    spec.n_interfaces = n_interfaces;
    FluidState s;
    s.rho = gen_oscillating_density(grid, spec);
    s.u = initial_velocity(cfg, grid);
    s.c = initial_order_parameter(cfg, grid);
    return s;
}

EffectiveState effective_initial_state(const RunConfig& cfg)
{
    auto const law = cfg.law();
    if (cfg.measure == InitialMeasure::dirac)
    {
        return dirac_state(detailed_initial_state(cfg, cfg.oscillation.n_interfaces), law);
    }
    Grid1D const grid = cfg.grid();
    auto const& o = cfg.oscillation;
    return uniform_state(grid,
                         limit_measure(o.theta, o.r_vap, o.r_liq),
                         initial_velocity(cfg, grid),
                         initial_order_parameter(cfg, grid),
                         law);
}

}  // namespace spraylab
