#ifndef EUCLID4_REACTIONS_HPP
#define EUCLID4_REACTIONS_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "euclid4/constants.hpp"

namespace euclid4 {

struct ParticleSpecies
{
    std::string name;
    double charge;    ///< C, signed
    double rest_mass; ///< kg
    bool is_simple;

    bool operator==(const ParticleSpecies&) const = default;
};

/// Species keyed by unique name, kept in file order.
class ParticleTable
{
public:
    ParticleTable() = default;
    explicit ParticleTable(std::vector<ParticleSpecies> entries);

    const std::vector<ParticleSpecies>& entries() const { return entries_; }
    const ParticleSpecies* find(std::string_view name) const;
    const ParticleSpecies& at(std::string_view name) const;
    std::size_t size() const { return entries_.size(); }

    bool operator==(const ParticleTable&) const = default;

private:
    std::vector<ParticleSpecies> entries_;
};

/**
Parse a particle table. Comma-separated text with a header row naming the
columns name, charge_e, mass_MeV and is_simple in any order. charge_e is the
charge in units of the (negative) electron charge, so an electron row reads
1 and a proton row -1; it must be an integer within 1e-9. is_simple is
`simple` or `composite`. Blank lines and lines starting with `#` are skipped.
*/
ParticleTable parse_particle_table(std::string_view text, const Constants& k = Constants::codata());
ParticleTable load_particle_table(const std::filesystem::path& path, const Constants& k = Constants::codata());

/// Write a table in the format parse_particle_table() reads.
std::string serialize_particle_table(const ParticleTable& table, const Constants& k = Constants::codata());

/// The bundled particle-data fixture.
std::string_view default_particle_table_text();
ParticleTable default_particle_table(const Constants& k = Constants::codata());

double species_w_momentum(const ParticleSpecies& s, const Constants& k = Constants::codata());

struct Reaction
{
    std::string label;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

/// JSON list of {"label", "inputs", "outputs"} objects.
std::vector<Reaction> parse_reactions(std::string_view text);
std::vector<Reaction> load_reactions(const std::filesystem::path& path);
std::string_view default_reactions_text();
std::vector<Reaction> default_reactions();

struct Verdict
{
    bool pass;
    double residual; ///< |in - out|
    double scale;    ///< the tolerance is applied relative to this
};

struct ConservationReport
{
    std::string label;
    double charge_in, charge_out;
    double w_momentum_in, w_momentum_out;
    double rest_mass_sum_in, rest_mass_sum_out;
    Verdict charge;
    Verdict w_momentum;
    Verdict rest_mass; ///< reported only, never an error
};

inline constexpr double kDefaultConservationTolerance = 1e-12;

/**
Sum charge, w-momentum and rest mass on each side of a reaction. A quantity
passes when |in - out| <= tol * max(|in|, |out|, unit) with the unit |e|,
m_e c and m_e respectively. Throws IngestionError for unknown species or an
empty side.
*/
ConservationReport check_reaction(const Reaction& r, const ParticleTable& table,
                                  double tol = kDefaultConservationTolerance,
                                  const Constants& k = Constants::codata());

struct SuiteEntry
{
    std::string label;
    std::optional<ConservationReport> report;
    std::string error; ///< set when report is empty
};

struct SuiteSummary
{
    std::size_t errors = 0;
    std::size_t charge_pass = 0, charge_fail = 0;
    std::size_t w_momentum_pass = 0, w_momentum_fail = 0;
    std::size_t rest_mass_pass = 0, rest_mass_fail = 0;
};

struct SuiteResult
{
    std::vector<SuiteEntry> entries; ///< input order
    SuiteSummary summary;
};

/// Check every reaction; a failing reaction yields an error entry without
/// affecting the others.
SuiteResult run_reaction_suite(const std::vector<Reaction>& reactions, const ParticleTable& table,
                               double tol = kDefaultConservationTolerance,
                               const Constants& k = Constants::codata());

} // namespace euclid4

#endif // EUCLID4_REACTIONS_HPP
