#include "euclid4/cli/execute.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "euclid4/cli/tolerances.hpp"
#include "euclid4/core4.hpp"
#include "euclid4/transforms.hpp"
#include "euclid4/wave_io.hpp"
#include "euclid4/wavemech.hpp"

namespace euclid4::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using V3 = Vector3<double>;
using V4 = Vector4<double>;
using State = WaveState<double>;
using Grid = GridSpec<double>;

/// Seeded draws built from raw engine bits so every platform sees the same stream.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    V3 direction()
    {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * std::numbers::pi);
        const double r = std::sqrt(1.0 - z * z);
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    V4 direction4()
    {
        for (;;) {
            V4 d;
            for (int a = 0; a < 4; ++a) {
                d[a] = uniform(-1.0, 1.0);
            }
            const double n = d.norm();
            if (n > 1e-3 && n <= 1.0) {
                return d / n;
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

std::string fmt(double x)
{
    std::ostringstream s;
    s << x;
    return s.str();
}

std::filesystem::path resolve(const Scenario& s, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() || s.base_dir.empty() ? path : s.base_dir / path;
}

V3 vec3(const json& v) { return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}; }

ordered_json to_array(const V3& v) { return ordered_json::array({v[0], v[1], v[2]}); }

ordered_json to_array(const V4& v) { return ordered_json::array({v[0], v[1], v[2], v[3]}); }

struct TableChoice
{
    ParticleTable table;
    std::string source;
};

TableChoice pick_table(const Scenario& s, const Context& ctx)
{
    if (ctx.table) {
        return {*ctx.table, "command line"};
    }
    if (s.parameters.contains("table")) {
        const auto name = s.parameters["table"].get<std::string>();
        return {load_particle_table(resolve(s, name), ctx.constants), name};
    }
    return {default_particle_table(ctx.constants), "bundled"};
}

double species_mass(const Scenario& s, const Context& ctx, std::string& name)
{
    name = s.parameters.value("species", std::string("electron"));
    const auto table = pick_table(s, ctx);
    const double m0 = table.table.at(name).rest_mass;
    if (!(m0 > 0)) {
        throw PreconditionError("species " + name + " is massless");
    }
    return m0;
}

State single_mode(const V4& k4, const Constants& k) { return {{make_plane_wave(k4, std::complex<double>(1, 0), k)}}; }

/// Lattice with c dt = h/4 so time and space truncation terms cannot cancel.
Grid grid_for(double h, const Constants& k, int samples = 5)
{
    return Grid::uniform(h, h / (4 * k.c), samples);
}

void run_reaction_suite_kind(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const auto table = pick_table(s, ctx);
    std::vector<Reaction> reactions;
    std::string source = "bundled";
    if (s.parameters.contains("reactions")) {
        const auto& r = s.parameters["reactions"];
        if (r.is_string()) {
            source = r.get<std::string>();
            reactions = load_reactions(resolve(s, source));
        } else {
            source = "inline";
            reactions = parse_reactions(r.dump());
        }
    } else {
        reactions = default_reactions();
    }
    const double tol = s.tolerance.value_or(defaults::conservation);
    const auto result = run_reaction_suite(reactions, table.table, tol, k);

    const double mev = k.kg_per_mev();
    const double mec = k.m_e * k.c;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        const auto& entry = result.entries[i];
        ordered_json row;
        row["label"] = entry.label;
        row["inputs"] = reactions[i].inputs;
        row["outputs"] = reactions[i].outputs;
        if (!entry.report) {
            out.checks.push_back(make_check(entry.label + "/species", 1, 0, Comparison::Absolute, 0.0));
            row["error"] = entry.error;
            rows.push_back(std::move(row));
            continue;
        }
        const auto& rep = *entry.report;
        const auto add = [&](const char* quantity, const Verdict& v, bool required) {
            out.checks.push_back(make_check(entry.label + "/" + quantity, v.residual / v.scale, 0,
                                            Comparison::Absolute, tol, required));
        };
        add("charge", rep.charge, true);
        add("w_momentum", rep.w_momentum, true);
        add("rest_mass", rep.rest_mass, false);
        row["charge_in_units_of_e"] = rep.charge_in / k.e_magnitude();
        row["charge_out_units_of_e"] = rep.charge_out / k.e_magnitude();
        row["w_momentum_in_units_of_me_c"] = rep.w_momentum_in / mec;
        row["w_momentum_out_units_of_me_c"] = rep.w_momentum_out / mec;
        row["rest_mass_in_MeV"] = rep.rest_mass_sum_in / mev;
        row["rest_mass_out_MeV"] = rep.rest_mass_sum_out / mev;
        row["rest_mass_deficit_MeV"] = (rep.rest_mass_sum_out - rep.rest_mass_sum_in) / mev;
        rows.push_back(std::move(row));
    }
    const auto& sum = result.summary;
    out.details["table"] = table.source;
    out.details["reactions_source"] = source;
    out.details["tolerance"] = tol;
    out.details["reactions"] = std::move(rows);
    out.details["summary"] = {{"errors", sum.errors},
                              {"charge_pass", sum.charge_pass},
                              {"charge_fail", sum.charge_fail},
                              {"w_momentum_pass", sum.w_momentum_pass},
                              {"w_momentum_fail", sum.w_momentum_fail},
                              {"rest_mass_pass", sum.rest_mass_pass},
                              {"rest_mass_fail", sum.rest_mass_fail}};
}

void run_boost(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const auto& p = s.parameters;
    const double kmag = p.value("k_magnitude", 1e10);
    const double beta = p["speed_fraction"].get<double>();
    const int n = p.value("directions", 100);
    const std::vector<double> sweep = p.value("beta_sweep", std::vector<double>{0.1, 0.5, 0.9, 0.99});
    const double tol = s.tolerance.value_or(defaults::closure);

    Rng rng(s.seed);
    const State state = composite_state(V3(kmag * rng.direction()), std::complex<double>(1, 0), k);
    const double e0 = total_energy(state, k);
    const double m0 = composite_rest_mass(state, k);
    const double g = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));

    double lo = INFINITY, hi = -INFINITY, drift = 0;
    int w_kept = 0;
    for (int i = 0; i < n; ++i) {
        const V3 v = beta * k.c * rng.direction();
        const State b = boost_composite(state, v, k);
        const double r = total_energy(b, k) / e0;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        drift = std::max(drift, std::abs(invariant_mass(b, k) / m0 - 1));
        bool same = true;
        for (std::size_t j = 0; j < b.components.size(); ++j) {
            same = same && b.components[j].k[W] == state.components[j].k[W];
        }
        w_kept += same;
    }
    out.checks.push_back(make_check("energy_ratio_min", lo, g, Comparison::Relative, tol));
    out.checks.push_back(make_check("energy_ratio_max", hi, g, Comparison::Relative, tol));
    out.checks.push_back(make_check("energy_ratio_spread", hi - lo, 0, Comparison::Absolute, tol));
    out.checks.push_back(make_check("invariant_mass_drift", drift, 0, Comparison::Absolute, tol));
    out.checks.push_back(make_check("w_components_unchanged", w_kept, n, Comparison::Absolute, 0.0));

    ordered_json factors = ordered_json::object();
    for (double b : sweep) {
        const State moved = boost_composite(state, V3(b * k.c, 0, 0), k);
        const double factor = total_energy(moved, k) / (k.c * k.c) / m0;
        out.checks.push_back(make_check("mass_factor[beta=" + fmt(b) + "]", factor, 1.0 / std::sqrt(1.0 - b * b),
                                        Comparison::Relative, tol));
        factors[fmt(b)] = factor;
    }
    out.details["k3"] = to_array(V3(spatial(state.components[1].k)));
    out.details["rest_mass_kg"] = m0;
    out.details["rest_energy_J"] = e0;
    out.details["speed_fraction"] = beta;
    out.details["gamma"] = g;
    out.details["directions"] = n;
    out.details["mass_factors"] = std::move(factors);
}

State random_state(const json& spec, Rng& rng, const Constants& k)
{
    State state;
    const int count = spec["count"].get<int>();
    const double lo = spec["k_min"].get<double>();
    const double hi = spec["k_max"].get<double>();
    for (int i = 0; i < count; ++i) {
        const double magnitude = rng.uniform(lo, hi);
        const V4 k4 = magnitude * rng.direction4();
        const std::complex<double> a(rng.uniform(-1, 1), rng.uniform(-1, 1));
        state.components.push_back(make_plane_wave(k4, a, k));
    }
    return state;
}

void run_wave(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const auto& p = s.parameters;
    Rng rng(s.seed);
    State state;
    if (p.contains("random_modes")) {
        state = random_state(p["random_modes"], rng, k);
    } else if (p["state"].is_string()) {
        state = load_wave_state(resolve(s, p["state"].get<std::string>()), k);
    } else {
        state = wave_state_from_json(p["state"], k);
    }
    double kmax = 0;
    for (const auto& w : state.components) {
        kmax = std::max(kmax, w.k.norm());
    }
    if (!(kmax > 0)) {
        throw PreconditionError("wave state needs a nonzero wave vector");
    }
    const double step_hk = p.value("step_hk", defaults::step_hk);
    const double order_hk = p.value("order_step_hk", defaults::order_step_hk);
    const int samples = p.value("samples", 5);

    for (std::size_t i = 0; i < state.components.size(); ++i) {
        const auto& w = state.components[i];
        const double target = k.c * w.k.norm();
        const double detuning = target > 0 ? std::abs(w.omega - target) / target : std::abs(w.omega);
        out.checks.push_back(
            make_check("dispersion[" + std::to_string(i) + "]", detuning, 0, Comparison::Absolute, defaults::identity));
    }
    const double h = step_hk / kmax;
    const double r = wave_equation_residual(state, grid_for(h, k, samples), k);
    out.checks.push_back(
        make_check("residual", r, 0, Comparison::Absolute, s.tolerance.value_or(defaults::residual)));

    const double coarse_h = order_hk / kmax;
    const double coarse = wave_equation_residual(state, grid_for(coarse_h, k, samples), k);
    const double fine = wave_equation_residual(state, grid_for(coarse_h / 2, k, samples), k);
    const double order = measured_order(coarse, fine);
    out.checks.push_back(
        make_check("convergence_order", order, defaults::order, Comparison::Absolute, defaults::order_tolerance));

    out.details["components"] = wave_state_to_json(state, k);
    out.details["max_k"] = kmax;
    out.details["step"] = h;
    out.details["time_step"] = h / (4 * k.c);
    out.details["samples_per_axis"] = samples;
    out.details["order_steps"] = ordered_json::array({coarse_h, coarse_h / 2});
    out.details["order_residuals"] = ordered_json::array({coarse, fine});
}

void run_kg(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    std::string species;
    const double m0 = species_mass(s, ctx, species);
    const double mu = m0 * k.c / k.hbar();
    const double step_hk = s.parameters.value("step_hk", defaults::step_hk);
    const double moving_bound = s.tolerance.value_or(defaults::residual);

    ordered_json modes = ordered_json::array();
    const auto& list = s.parameters["modes"];
    for (std::size_t i = 0; i < list.size(); ++i) {
        const V3 k3 = mu * vec3(list[i]["k3"]);
        const int branch = list[i].value("branch", 1);
        const State state = single_mode(make_vector4(branch * mu, k3), k);
        const double k3n = k3.norm();
        const double h = step_hk / (k3n > 0 ? k3n : mu);
        const double r = klein_gordon_residual(state, m0, grid_for(h, k), k);
        const bool at_rest = k3n == 0;
        out.checks.push_back(make_check("mode[" + std::to_string(i) + "]/residual", r, 0, Comparison::Absolute,
                                        at_rest ? defaults::rest_residual : moving_bound));
        modes.push_back({{"k", to_array(state.components[0].k)},
                         {"omega", state.components[0].omega},
                         {"step", h},
                         {"residual", r}});
    }
    out.details["species"] = species;
    out.details["rest_mass_kg"] = m0;
    out.details["mass_wavenumber"] = mu;
    out.details["modes"] = std::move(modes);
}

void run_schrodinger(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const auto& p = s.parameters;
    std::string species;
    const double m0 = species_mass(s, ctx, species);
    const double mu = m0 * k.c / k.hbar();
    const double step_hk = p.value("step_hk", defaults::step_hk);
    const std::vector<double> ratios = p.value("ratios", std::vector<double>{0.0125, 0.025, 0.05, 0.1});
    const V3 dir = (p.contains("direction") ? vec3(p["direction"]) : V3(1, 2, -2)).normalized();
    const double bound = s.tolerance.value_or(defaults::schrodinger_max_residual);

    const double rest_h = step_hk / mu;
    const double rest = schrodinger_residual(single_mode(V4(mu, 0, 0, 0), k), m0, grid_for(rest_h, k), k);
    out.checks.push_back(make_check("rest_residual", rest, 0, Comparison::Absolute, defaults::rest_residual));

    ordered_json sweep = ordered_json::array();
    std::vector<double> lx, ly;
    for (double x : ratios) {
        const V3 k3 = x * mu * dir;
        const V4 k4 = make_vector4(mu, k3);
        // envelope frequency c(|k| - mu), written to avoid cancellation
        const double envelope = k.c * k3.squaredNorm() / (k4.norm() + mu);
        const auto grid = Grid::uniform(step_hk / k3.norm(), step_hk / envelope);
        const double r = schrodinger_residual(single_mode(k4, k), m0, grid, k);
        out.checks.push_back(make_check("residual[ratio=" + fmt(x) + "]", r, 0, Comparison::Absolute, bound));
        sweep.push_back({{"ratio", x}, {"residual", r}});
        lx.push_back(std::log(x));
        ly.push_back(std::log(r));
    }
    // least-squares slope of log residual against log ratio
    const double n = double(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i] / n;
        my += ly[i] / n;
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double exponent = num / den;
    out.checks.push_back(make_check("exponent", exponent, defaults::schrodinger_exponent, Comparison::Absolute,
                                    defaults::schrodinger_exponent_tolerance));

    out.details["species"] = species;
    out.details["rest_mass_kg"] = m0;
    out.details["direction"] = to_array(dir);
    out.details["sweep"] = std::move(sweep);
}

void run_composite(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const auto& p = s.parameters;
    const V3 k3 = vec3(p["k3"]);
    const std::complex<double> amp =
        p.contains("amplitude") ? std::complex<double>(p["amplitude"][0].get<double>(), p["amplitude"][1].get<double>())
                                : std::complex<double>(1, 0);
    const V3 beta = p.contains("velocity_fraction") ? vec3(p["velocity_fraction"]) : V3(0.6, 0, 0);
    const double tol = s.tolerance.value_or(defaults::closure);

    const State state = composite_state(k3, amp, k);
    const double kn = k3.norm();
    const double m0 = composite_rest_mass(state, k);
    const double e0 = total_energy(state, k);
    double p_sum = 0;
    for (const auto& w : state.components) {
        p_sum += k.hbar() * spatial(w.k).norm();
    }
    const double net = spatial(total_momentum(state, k)).norm() / p_sum;
    out.checks.push_back(make_check("rest_mass", m0, 2 * k.hbar() * kn / k.c, Comparison::Relative, defaults::identity));
    out.checks.push_back(
        make_check("rest_energy", e0, 2 * k.hbar() * k.c * kn, Comparison::Relative, defaults::identity));
    out.checks.push_back(make_check("net_momentum", net, 0, Comparison::Absolute, defaults::identity));

    const V3 v = beta * k.c;
    const double g = gamma(v, k);
    const State b = boost_composite(state, v, k);
    const double e1 = total_energy(b, k);
    const double p1 = spatial(total_momentum(b, k)).norm();
    int w_kept = 0, amp_kept = 0;
    for (std::size_t j = 0; j < b.components.size(); ++j) {
        w_kept += b.components[j].k[W] == state.components[j].k[W];
        amp_kept += b.components[j].amplitude == state.components[j].amplitude;
    }
    const double n = double(b.components.size());
    out.checks.push_back(make_check("boosted_energy_ratio", e1 / e0, g, Comparison::Relative, tol));
    out.checks.push_back(make_check("boosted_invariant_mass", invariant_mass(b, k), m0, Comparison::Relative, tol));
    out.checks.push_back(
        make_check("boosted_momentum", p1 / (m0 * k.c), g * beta.norm(), Comparison::Absolute, tol));
    out.checks.push_back(make_check("w_components_unchanged", w_kept, n, Comparison::Absolute, 0.0));
    out.checks.push_back(make_check("amplitudes_unchanged", amp_kept, n, Comparison::Absolute, 0.0));

    out.details["k_magnitude"] = kn;
    out.details["rest_mass_kg"] = m0;
    out.details["rest_energy_J"] = e0;
    out.details["velocity_fraction"] = to_array(beta);
    out.details["gamma"] = g;
    out.details["boosted_energy_J"] = e1;
    out.details["boosted_momentum"] = p1;
}

void run_scales(const Scenario& s, const Context& ctx, RunReport& out)
{
    const auto& k = ctx.constants;
    const double compton = compton_wavelength(k.m_e, k);
    const double klein = klein_circumference(k);
    out.checks.push_back(make_check("compton_wavelength", compton, defaults::compton_electron, Comparison::Relative,
                                    s.tolerance.value_or(defaults::compton_tolerance)));
    out.checks.push_back(make_check("klein_circumference", klein, defaults::klein_estimate, Comparison::Relative,
                                    defaults::klein_estimate_tolerance));
    out.checks.push_back(make_check("klein_circumference_derived", klein, defaults::klein_derived,
                                    Comparison::Relative, defaults::klein_derived_tolerance));
    out.checks.push_back(
        make_check("compton_to_klein_ratio", compton / klein, defaults::scale_ratio_min, Comparison::AtLeast, {}));
    out.details["compton_wavelength_m"] = compton;
    out.details["klein_circumference_m"] = klein;
    out.details["ratio"] = compton / klein;
    out.details["charge_convention"] = "gaussian: |e| / sqrt(4 pi epsilon0)";
}

} // namespace

RunReport execute(const Scenario& scenario, const Context& context)
{
    RunReport report;
    report.label = scenario.label;
    report.kind = std::string(kind_name(scenario.kind));
    report.seed = scenario.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        validate_parameters(scenario.kind, scenario.parameters);
        switch (scenario.kind) {
        case Kind::ReactionSuite: run_reaction_suite_kind(scenario, context, report); break;
        case Kind::Boost: run_boost(scenario, context, report); break;
        case Kind::WaveResidual: run_wave(scenario, context, report); break;
        case Kind::KgResidual: run_kg(scenario, context, report); break;
        case Kind::SchrodingerResidual: run_schrodinger(scenario, context, report); break;
        case Kind::Composite: run_composite(scenario, context, report); break;
        case Kind::Scales: run_scales(scenario, context, report); break;
        }
    } catch (const std::exception& e) {
        throw ExecutionError("scenario \"" + scenario.label + "\": " + e.what());
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<BatchItem> execute_batch(const std::vector<Scenario>& scenarios, const Context& context)
{
    std::vector<std::future<RunReport>> jobs;
    jobs.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        jobs.push_back(std::async(std::launch::async, [&s, &context] { return execute(s, context); }));
    }
    std::vector<BatchItem> items(scenarios.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            items[i].report = jobs[i].get();
        } catch (const std::exception& e) {
            items[i].error = e.what();
        }
    }
    return items;
}

} // namespace euclid4::cli
