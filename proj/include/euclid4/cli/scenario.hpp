#ifndef EUCLID4_CLI_SCENARIO_HPP
#define EUCLID4_CLI_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "euclid4/errors.hpp"

namespace euclid4::cli {

enum class Kind { ReactionSuite, Boost, WaveResidual, KgResidual, SchrodingerResidual, Composite, Scales };

std::string_view kind_name(Kind kind);
std::optional<Kind> kind_from_name(std::string_view name);
std::span<const Kind> all_kinds();

enum class Format { Json, Csv };

std::string_view format_name(Format format);
std::optional<Format> format_from_name(std::string_view name);

struct OutputSpec
{
    Format format = Format::Json;
    std::string path = "-"; ///< "-" is standard output
};

struct Scenario
{
    std::string label;
    Kind kind = Kind::Scales;
    std::uint64_t seed = 0;
    std::optional<double> tolerance; ///< overrides the kind's primary threshold
    nlohmann::json parameters = nlohmann::json::object();
    OutputSpec output;
    /// Relative paths inside parameters resolve against this directory.
    std::filesystem::path base_dir;
};

/// Malformed scenario document. The message carries a line/column or a JSON
/// pointer to the offending value.
class ScenarioError : public InvalidInput
{
public:
    using InvalidInput::InvalidInput;
};

/**
Parse a scenario document:
  {"label", "kind", "seed", "tolerance", "parameters": {...},
   "output": {"format": "json"|"csv", "path"}}
Only "kind" is required. Parameters are checked against the kind's schema.
*/
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Scenario for a kind subcommand; `parameters` is validated like a file's.
Scenario make_scenario(Kind kind, nlohmann::json parameters = nlohmann::json::object(),
                       const std::filesystem::path& base_dir = {});

/// Scenario for a kind subcommand from a file holding just the parameters object.
Scenario load_parameters(Kind kind, const std::filesystem::path& path);

/// Throws ScenarioError naming the first bad parameter.
void validate_parameters(Kind kind, const nlohmann::json& parameters);

} // namespace euclid4::cli

#endif // EUCLID4_CLI_SCENARIO_HPP
