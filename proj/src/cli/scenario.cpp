#include "euclid4/cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "euclid4/reactions.hpp"
#include "euclid4/wave_io.hpp"

namespace euclid4::cli {

namespace {

using nlohmann::json;

constexpr std::array kKinds{Kind::ReactionSuite, Kind::Boost,     Kind::WaveResidual, Kind::KgResidual,
                            Kind::SchrodingerResidual, Kind::Composite, Kind::Scales};

[[noreturn]] void fail(const std::string& where, const std::string& msg)
{
    throw ScenarioError(where + ": " + msg);
}

enum class Param {
    Number,
    Positive,
    Fraction, // [0, 1)
    Count,
    String,
    Vector3,
    Complex,
    Ratios,
    BetaList,
    WaveState,
    Reactions,
    RandomModes,
    KgModes,
};

struct ParamSpec
{
    std::string_view name;
    Param type;
    bool required = false;
};

std::span<const ParamSpec> schema(Kind kind)
{
    static constexpr ParamSpec reaction_suite[] = {{"table", Param::String}, {"reactions", Param::Reactions}};
    static constexpr ParamSpec boost[] = {{"k_magnitude", Param::Positive},
                                          {"speed_fraction", Param::Fraction, true},
                                          {"directions", Param::Count},
                                          {"beta_sweep", Param::BetaList}};
    static constexpr ParamSpec wave[] = {{"state", Param::WaveState},
                                         {"random_modes", Param::RandomModes},
                                         {"step_hk", Param::Positive},
                                         {"order_step_hk", Param::Positive},
                                         {"samples", Param::Count}};
    static constexpr ParamSpec kg[] = {{"species", Param::String},
                                       {"table", Param::String},
                                       {"modes", Param::KgModes, true},
                                       {"step_hk", Param::Positive}};
    static constexpr ParamSpec schrodinger[] = {{"species", Param::String},
                                                {"table", Param::String},
                                                {"ratios", Param::Ratios},
                                                {"direction", Param::Vector3},
                                                {"step_hk", Param::Positive}};
    static constexpr ParamSpec composite[] = {
        {"k3", Param::Vector3, true}, {"amplitude", Param::Complex}, {"velocity_fraction", Param::Vector3}};
    switch (kind) {
    case Kind::ReactionSuite: return reaction_suite;
    case Kind::Boost: return boost;
    case Kind::WaveResidual: return wave;
    case Kind::KgResidual: return kg;
    case Kind::SchrodingerResidual: return schrodinger;
    case Kind::Composite: return composite;
    case Kind::Scales: return {};
    }
    return {};
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        fail(where, "expected a finite number");
    }
    return x;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(where + "/" + key, "unknown key");
        }
    }
}

std::array<double, 3> vector3(const json& v, const std::string& where)
{
    if (!v.is_array() || v.size() != 3) {
        fail(where, "expected an array of three numbers");
    }
    return {number(v[0], where + "/0"), number(v[1], where + "/1"), number(v[2], where + "/2")};
}

void check_number_list(const json& v, const std::string& where, std::size_t min_size, double lo, double hi,
                       bool lo_open)
{
    if (!v.is_array() || v.size() < min_size) {
        fail(where, "expected an array of at least " + std::to_string(min_size) + " numbers");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        const double x = number(v[i], at);
        if ((lo_open ? x <= lo : x < lo) || x > hi) {
            std::ostringstream range;
            range << "value out of range " << (lo_open ? "(" : "[") << lo << ", " << hi << "]";
            fail(at, range.str());
        }
    }
}

void check_param(const ParamSpec& spec, const json& v, const std::string& where)
{
    switch (spec.type) {
    case Param::Number: number(v, where); break;
    case Param::Positive:
        if (!(number(v, where) > 0)) {
            fail(where, "must be positive");
        }
        break;
    case Param::Fraction: {
        const double x = number(v, where);
        if (!(x >= 0 && x < 1)) {
            fail(where, "must lie in [0, 1)");
        }
        break;
    }
    case Param::Count:
        if (!v.is_number_integer() || v.get<long long>() <= 0) {
            fail(where, "expected a positive integer");
        }
        break;
    case Param::String:
        if (!v.is_string()) {
            fail(where, "expected a string");
        }
        break;
    case Param::Vector3: {
        const auto a = vector3(v, where);
        if (a[0] == 0 && a[1] == 0 && a[2] == 0 && spec.name != "velocity_fraction") {
            fail(where, "must be nonzero");
        }
        if (spec.name == "velocity_fraction" && !(std::hypot(a[0], a[1], a[2]) < 1)) {
            fail(where, "speed must be below c");
        }
        break;
    }
    case Param::Complex:
        if (!v.is_array() || v.size() != 2) {
            fail(where, "expected [re, im]");
        }
        number(v[0], where + "/0");
        number(v[1], where + "/1");
        break;
    case Param::Ratios: check_number_list(v, where, 2, 0.0, 0.1, true); break;
    case Param::BetaList: check_number_list(v, where, 1, 0.0, 1.0 - 1e-12, false); break;
    case Param::WaveState:
        if (v.is_string()) {
            break;
        }
        try {
            if (wave_state_from_json(v).components.empty()) {
                fail(where, "state has no components");
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            fail(where, e.what());
        }
        break;
    case Param::Reactions:
        if (v.is_string()) {
            break;
        }
        try {
            parse_reactions(v.dump());
        } catch (const Error& e) {
            fail(where, e.what());
        }
        break;
    case Param::RandomModes: {
        check_keys(v, {"count", "k_min", "k_max"}, where);
        for (const char* key : {"count", "k_min", "k_max"}) {
            if (!v.contains(key)) {
                fail(where, std::string("missing key \"") + key + "\"");
            }
        }
        if (!v["count"].is_number_integer() || v["count"].get<long long>() <= 0 ||
            v["count"].get<long long>() > 64) {
            fail(where + "/count", "expected an integer in [1, 64]");
        }
        const double lo = number(v["k_min"], where + "/k_min");
        const double hi = number(v["k_max"], where + "/k_max");
        if (!(lo > 0 && lo <= hi)) {
            fail(where, "need 0 < k_min <= k_max");
        }
        break;
    }
    case Param::KgModes:
        if (!v.is_array() || v.empty()) {
            fail(where, "expected a non-empty array of modes");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string at = where + "/" + std::to_string(i);
            check_keys(v[i], {"k3", "branch"}, at);
            if (!v[i].contains("k3")) {
                fail(at, "missing key \"k3\"");
            }
            vector3(v[i]["k3"], at + "/k3");
            if (v[i].contains("branch")) {
                const auto& b = v[i]["branch"];
                if (!b.is_number_integer() || (b.get<int>() != 1 && b.get<int>() != -1)) {
                    fail(at + "/branch", "expected 1 or -1");
                }
            }
        }
        break;
    }
}

std::string line_column(std::string_view text, std::size_t byte)
{
    // nlohmann reports the 1-based offset of the byte it choked on
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError("cannot read scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

std::string_view kind_name(Kind kind)
{
    switch (kind) {
    case Kind::ReactionSuite: return "reaction-suite";
    case Kind::Boost: return "boost";
    case Kind::WaveResidual: return "wave-residual";
    case Kind::KgResidual: return "kg-residual";
    case Kind::SchrodingerResidual: return "schrodinger-residual";
    case Kind::Composite: return "composite";
    case Kind::Scales: return "scales";
    }
    return "unknown";
}

std::optional<Kind> kind_from_name(std::string_view name)
{
    for (Kind k : kKinds) {
        if (kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::span<const Kind> all_kinds() { return kKinds; }

std::string_view format_name(Format format) { return format == Format::Json ? "json" : "csv"; }

std::optional<Format> format_from_name(std::string_view name)
{
    if (name == "json") {
        return Format::Json;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    return std::nullopt;
}

void validate_parameters(Kind kind, const json& parameters)
{
    const auto specs = schema(kind);
    if (!parameters.is_object()) {
        fail("/parameters", "expected an object");
    }
    for (const auto& [key, value] : parameters.items()) {
        const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == key; });
        if (it == specs.end()) {
            fail("/parameters/" + key, "unknown parameter for kind " + std::string(kind_name(kind)));
        }
        check_param(*it, value, "/parameters/" + key);
    }
    for (const auto& spec : specs) {
        if (spec.required && !parameters.contains(spec.name)) {
            fail("/parameters", "missing parameter \"" + std::string(spec.name) + "\" for kind " +
                                    std::string(kind_name(kind)));
        }
    }
    if (kind == Kind::WaveResidual && parameters.contains("state") == parameters.contains("random_modes")) {
        fail("/parameters", "wave-residual takes exactly one of \"state\" or \"random_modes\"");
    }
}

Scenario make_scenario(Kind kind, json parameters, const std::filesystem::path& base_dir)
{
    if (parameters.is_null()) {
        parameters = json::object();
    }
    validate_parameters(kind, parameters);
    Scenario s;
    s.label = std::string(kind_name(kind));
    s.kind = kind;
    s.parameters = std::move(parameters);
    s.base_dir = base_dir;
    return s;
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ScenarioError("scenario parse error at " + line_column(text, e.byte) + ": " + e.what());
    }
    check_keys(doc, {"label", "description", "kind", "seed", "tolerance", "parameters", "output"}, "");

    if (!doc.contains("kind")) {
        fail("/kind", "missing");
    }
    if (!doc["kind"].is_string()) {
        fail("/kind", "expected a string");
    }
    const auto kind = kind_from_name(doc["kind"].get<std::string>());
    if (!kind) {
        fail("/kind", "unknown kind \"" + doc["kind"].get<std::string>() + "\"");
    }

    Scenario s = make_scenario(*kind, doc.value("parameters", json::object()), base_dir);
    if (doc.contains("label")) {
        if (!doc["label"].is_string() || doc["label"].get<std::string>().empty()) {
            fail("/label", "expected a non-empty string");
        }
        s.label = doc["label"].get<std::string>();
    }
    if (doc.contains("description") && !doc["description"].is_string()) {
        fail("/description", "expected a string");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            fail("/seed", "expected a non-negative integer");
        }
        s.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("tolerance")) {
        const double tol = number(doc["tolerance"], "/tolerance");
        if (!(tol > 0)) {
            fail("/tolerance", "must be positive");
        }
        s.tolerance = tol;
    }
    if (doc.contains("output")) {
        const auto& out = doc["output"];
        check_keys(out, {"format", "path"}, "/output");
        if (out.contains("format")) {
            const auto f = out["format"].is_string() ? format_from_name(out["format"].get<std::string>())
                                                     : std::nullopt;
            if (!f) {
                fail("/output/format", "expected \"json\" or \"csv\"");
            }
            s.output.format = *f;
        }
        if (out.contains("path")) {
            if (!out["path"].is_string() || out["path"].get<std::string>().empty()) {
                fail("/output/path", "expected a non-empty string");
            }
            s.output.path = out["path"].get<std::string>();
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    try {
        return parse_scenario(text, path.parent_path());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

Scenario load_parameters(Kind kind, const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    try {
        json params;
        try {
            params = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ScenarioError("parameters parse error at " + line_column(text, e.byte) + ": " + e.what());
        }
        return make_scenario(kind, std::move(params), path.parent_path());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

} // namespace euclid4::cli
