#include "euclid4/reactions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "euclid4/core4.hpp"
#include "euclid4/errors.hpp"

namespace euclid4 {
namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view text, const std::string& where, const char* column)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw IngestionError(where + ": invalid " + column + " '" + std::string(text) + "'");
    }
    return value;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestionError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

ParticleTable::ParticleTable(std::vector<ParticleSpecies> entries)
    : entries_(std::move(entries))
{
    std::set<std::string, std::less<>> names;
    for (const auto& s : entries_) {
        if (!names.insert(s.name).second) {
            throw IngestionError("duplicate species '" + s.name + "'");
        }
    }
}

const ParticleSpecies* ParticleTable::find(std::string_view name) const
{
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const ParticleSpecies& s) { return s.name == name; });
    return it == entries_.end() ? nullptr : &*it;
}

const ParticleSpecies& ParticleTable::at(std::string_view name) const
{
    if (const auto* s = find(name)) {
        return *s;
    }
    throw IngestionError("unknown species '" + std::string(name) + "'");
}

ParticleTable parse_particle_table(std::string_view text, const Constants& k)
{
    constexpr std::array<std::string_view, 4> required{"name", "charge_e", "mass_MeV", "is_simple"};
    std::array<std::size_t, 4> column{};
    bool have_header = false;
    std::size_t width = 0;
    std::vector<ParticleSpecies> rows;
    std::set<std::string, std::less<>> names;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto where = "particle table line " + std::to_string(line_no);
        const auto fields = split_fields(line);
        if (!have_header) {
            width = fields.size();
            for (std::size_t c = 0; c < required.size(); ++c) {
                const auto it = std::find(fields.begin(), fields.end(), required[c]);
                if (it == fields.end()) {
                    throw IngestionError(where + ": header lacks column '" + std::string(required[c]) + "'");
                }
                column[c] = static_cast<std::size_t>(it - fields.begin());
            }
            have_header = true;
            continue;
        }
        if (fields.size() != width) {
            throw IngestionError(where + ": expected " + std::to_string(width) + " fields");
        }
        const std::string name(fields[column[0]]);
        const auto row = where + " (" + name + ")";
        if (name.empty()) {
            throw IngestionError(where + ": empty name");
        }
        if (!names.insert(name).second) {
            throw IngestionError(row + ": duplicate species name");
        }
        const double charge_units = parse_number(fields[column[1]], row, "charge_e");
        if (std::abs(charge_units - std::round(charge_units)) > 1e-9 * std::max(1.0, std::abs(charge_units))) {
            throw IngestionError(row + ": charge is not an integer multiple of e");
        }
        const double mass_mev = parse_number(fields[column[2]], row, "mass_MeV");
        if (mass_mev < 0) {
            throw IngestionError(row + ": negative rest mass");
        }
        const auto kind = fields[column[3]];
        if (kind != "simple" && kind != "composite") {
            throw IngestionError(row + ": is_simple must be 'simple' or 'composite'");
        }
        rows.push_back({name, std::round(charge_units) * k.e_electron, mass_mev * k.kg_per_mev(),
                        kind == "simple"});
    }
    if (!have_header) {
        throw IngestionError("particle table is empty");
    }
    if (rows.empty()) {
        throw IngestionError("particle table has a header but no rows");
    }
    return ParticleTable(std::move(rows));
}

ParticleTable load_particle_table(const std::filesystem::path& path, const Constants& k)
{
    return parse_particle_table(read_file(path), k);
}

std::string serialize_particle_table(const ParticleTable& table, const Constants& k)
{
    std::ostringstream out;
    out.precision(17);
    out << "name,charge_e,mass_MeV,is_simple\n";
    for (const auto& s : table.entries()) {
        out << s.name << ',' << std::llround(s.charge / k.e_electron) << ',' << s.rest_mass / k.kg_per_mev()
            << ',' << (s.is_simple ? "simple" : "composite") << '\n';
    }
    return out.str();
}

ParticleTable default_particle_table(const Constants& k)
{
    return parse_particle_table(default_particle_table_text(), k);
}

double species_w_momentum(const ParticleSpecies& s, const Constants& k)
{
    return w_momentum_from_charge(s.charge, k);
}

std::vector<Reaction> parse_reactions(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestionError(std::string("reaction file: ") + e.what());
    }
    if (!doc.is_array()) {
        throw IngestionError("reaction file: top level must be a list");
    }
    std::vector<Reaction> reactions;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const auto where = "reaction " + std::to_string(i);
        if (!item.is_object()) {
            throw IngestionError(where + ": expected an object");
        }
        for (const auto& [key, _] : item.items()) {
            if (key != "label" && key != "inputs" && key != "outputs") {
                throw IngestionError(where + ": unknown key '" + key + "'");
            }
        }
        Reaction r;
        try {
            r.label = item.at("label").get<std::string>();
            r.inputs = item.at("inputs").get<std::vector<std::string>>();
            r.outputs = item.at("outputs").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw IngestionError(where + ": " + e.what());
        }
        reactions.push_back(std::move(r));
    }
    return reactions;
}

std::vector<Reaction> load_reactions(const std::filesystem::path& path)
{
    return parse_reactions(read_file(path));
}

std::vector<Reaction> default_reactions()
{
    return parse_reactions(default_reactions_text());
}

namespace {

Verdict compare(double in, double out, double unit, double tol)
{
    const double scale = std::max({std::abs(in), std::abs(out), unit});
    const double residual = std::abs(in - out);
    return {residual <= tol * scale, residual, scale};
}

} // namespace

ConservationReport check_reaction(const Reaction& r, const ParticleTable& table, double tol, const Constants& k)
{
    if (r.inputs.empty() || r.outputs.empty()) {
        throw IngestionError("reaction '" + r.label + "': both sides must be non-empty");
    }
    ConservationReport report{};
    report.label = r.label;
    const auto accumulate = [&](const std::vector<std::string>& side, double& charge, double& w, double& mass) {
        charge = w = mass = 0.0;
        for (const auto& name : side) {
            const auto* s = table.find(name);
            if (s == nullptr) {
                throw IngestionError("reaction '" + r.label + "': unknown species '" + name + "'");
            }
            charge += s->charge;
            w += species_w_momentum(*s, k);
            mass += s->rest_mass;
        }
    };
    accumulate(r.inputs, report.charge_in, report.w_momentum_in, report.rest_mass_sum_in);
    accumulate(r.outputs, report.charge_out, report.w_momentum_out, report.rest_mass_sum_out);
    report.charge = compare(report.charge_in, report.charge_out, k.e_magnitude(), tol);
    report.w_momentum = compare(report.w_momentum_in, report.w_momentum_out, k.m_e * k.c, tol);
    report.rest_mass = compare(report.rest_mass_sum_in, report.rest_mass_sum_out, k.m_e, tol);
    return report;
}

SuiteResult run_reaction_suite(const std::vector<Reaction>& reactions, const ParticleTable& table, double tol,
                               const Constants& k)
{
    SuiteResult result;
    result.entries.reserve(reactions.size());
    for (const auto& r : reactions) {
        SuiteEntry entry{r.label, std::nullopt, {}};
        try {
            entry.report = check_reaction(r, table, tol, k);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        auto& s = result.summary;
        if (entry.report) {
            const auto& rep = *entry.report;
            ++(rep.charge.pass ? s.charge_pass : s.charge_fail);
            ++(rep.w_momentum.pass ? s.w_momentum_pass : s.w_momentum_fail);
            ++(rep.rest_mass.pass ? s.rest_mass_pass : s.rest_mass_fail);
        } else {
            ++s.errors;
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

} // namespace euclid4
