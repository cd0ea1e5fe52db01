#ifndef EUCLID4_CLI_EXECUTE_HPP
#define EUCLID4_CLI_EXECUTE_HPP

#include <optional>
#include <vector>

#include "euclid4/cli/report.hpp"
#include "euclid4/cli/scenario.hpp"
#include "euclid4/constants.hpp"
#include "euclid4/reactions.hpp"

namespace euclid4::cli {

/// Inputs shared by every scenario of one invocation.
struct Context
{
    Constants constants = Constants::codata();
    /// Replaces any "table" parameter when set.
    std::optional<ParticleTable> table;
};

/// A downstream failure, prefixed with the scenario label.
class ExecutionError : public Error
{
public:
    using Error::Error;
};

/// Run one scenario. Deterministic for a given scenario, seed and context.
RunReport execute(const Scenario& scenario, const Context& context = {});

/// Result of one batch member: a report, or the error that stopped it.
struct BatchItem
{
    std::optional<RunReport> report;
    std::string error;
};

/// Execute independent scenarios concurrently; results keep input order.
std::vector<BatchItem> execute_batch(const std::vector<Scenario>& scenarios, const Context& context = {});

} // namespace euclid4::cli

#endif // EUCLID4_CLI_EXECUTE_HPP
