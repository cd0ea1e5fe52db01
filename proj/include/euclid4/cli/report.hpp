#ifndef EUCLID4_CLI_REPORT_HPP
#define EUCLID4_CLI_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "euclid4/cli/scenario.hpp"

namespace euclid4::cli {

/**
How a check's value is judged:
  Absolute  |value - expected| <= tolerance
  Relative  |value - expected| <= tolerance * |expected|
  AtLeast   value >= expected (no tolerance)
*/
enum class Comparison { Absolute, Relative, AtLeast };

std::string_view comparison_name(Comparison c);

struct Check
{
    std::string name;
    double value = 0;
    double expected = 0;
    std::optional<double> tolerance;
    Comparison comparison = Comparison::Absolute;
    bool required = true; ///< reported-only checks never change the run status
    bool pass = false;
};

/// Build a check and evaluate it. Non-finite values fail.
Check make_check(std::string name, double value, double expected, Comparison comparison,
                 std::optional<double> tolerance, bool required = true);

/// "pass", "fail", or "reported-fail" for a failing reported-only check.
std::string_view status_of(const Check& check);

struct RunReport
{
    std::string label;
    std::string kind;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    double elapsed_ms = 0;

    bool passed() const;
};

/// 0 when every required check passes, 1 otherwise.
int exit_code(const RunReport& report);

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Field order is fixed; "timing" is always the last key.
nlohmann::ordered_json to_json(const RunReport& report, bool include_timing = true);
/// Header scenario,check,value,expected,tolerance,status and one row per check.
std::string to_csv(const RunReport& report);
std::string render(const RunReport& report, Format format);

/// The dump() of a report document with "timing" removed.
std::string strip_timing(const std::string& json_text);

class OutputError : public Error
{
public:
    using Error::Error;
};

/// Write to a file, or to stdout when path is "-". Throws OutputError.
void write_output(const std::string& text, const std::string& path);

} // namespace euclid4::cli

#endif // EUCLID4_CLI_REPORT_HPP
