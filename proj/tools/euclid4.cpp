// euclid4: run Euclidean four-space verification scenarios.
//
//   euclid4 run scenarios/boost.json [more.json ...]
//   euclid4 scales --format csv
//   euclid4 boost params.json --seed 3

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "euclid4/cli/execute.hpp"
#include "euclid4/cli/report.hpp"
#include "euclid4/cli/scenario.hpp"

using namespace euclid4;
using namespace euclid4::cli;

namespace {

struct Flags
{
    std::string table;
    std::string constants;
    std::string format;
    std::string output;
    std::uint64_t seed = 0;
    double tolerance = 0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* tolerance_opt = nullptr;
};

void add_common(CLI::App* sub, Flags& f)
{
    sub->add_option("--table", f.table, "Particle table CSV replacing the bundled one");
    sub->add_option("--constants", f.constants, "Constants file (key = value lines)");
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", f.output, "Write the report here instead of the scenario's path");
    f.seed_opt = sub->add_option("--seed", f.seed, "Override the scenario seed");
    f.tolerance_opt =
        sub->add_option("--tolerance", f.tolerance, "Override the primary tolerance")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Euclidean four-space relativity checks"};
    app.require_subcommand(1, 1);

    // one Flags per subcommand; only the parsed one is read
    std::vector<Flags> flags(all_kinds().size() + 1);
    std::vector<std::string> files;
    std::vector<std::string> params(all_kinds().size());

    auto* run = app.add_subcommand("run", "Run scenario files; independent files run concurrently");
    run->add_option("scenarios", files, "Scenario JSON files")->required()->check(CLI::ExistingFile);
    add_common(run, flags.back());

    std::vector<CLI::App*> kind_cmds;
    for (std::size_t i = 0; i < all_kinds().size(); ++i) {
        const Kind kind = all_kinds()[i];
        auto* sub = app.add_subcommand(std::string(kind_name(kind)), "Run a " + std::string(kind_name(kind)) +
                                                                         " scenario with default or given parameters");
        sub->add_option("parameters", params[i], "JSON file with the parameters object")->check(CLI::ExistingFile);
        add_common(sub, flags[i]);
        kind_cmds.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    const Flags* f = &flags.back();
    std::vector<Scenario> scenarios;
    try {
        if (run->parsed()) {
            for (const auto& path : files) {
                scenarios.push_back(load_scenario(path));
            }
        } else {
            for (std::size_t i = 0; i < kind_cmds.size(); ++i) {
                if (kind_cmds[i]->parsed()) {
                    f = &flags[i];
                    scenarios.push_back(params[i].empty() ? make_scenario(all_kinds()[i])
                                                          : load_parameters(all_kinds()[i], params[i]));
                }
            }
        }
        if (!f->output.empty() && scenarios.size() > 1) {
            throw InvalidInput("--output needs a single scenario");
        }
    } catch (const Error& e) {
        std::cerr << "euclid4: " << e.what() << '\n';
        return kExitUsage;
    }

    Context ctx;
    try {
        if (!f->constants.empty()) {
            ctx.constants = load_constants(f->constants);
        }
        if (!f->table.empty()) {
            ctx.table = load_particle_table(f->table, ctx.constants);
        }
    } catch (const Error& e) {
        std::cerr << "euclid4: " << e.what() << '\n';
        return kExitUsage;
    }

    for (auto& s : scenarios) {
        if (f->seed_opt->count() > 0) {
            s.seed = f->seed;
        }
        if (f->tolerance_opt->count() > 0) {
            s.tolerance = f->tolerance;
        }
        if (!f->format.empty()) {
            s.output.format = *format_from_name(f->format);
        }
        if (!f->output.empty()) {
            s.output.path = f->output;
        }
    }

    const auto results = execute_batch(scenarios, ctx);
    int rc = kExitPass;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& item = results[i];
        if (!item.report) {
            std::cerr << "euclid4: " << item.error << '\n';
            rc = kExitUsage;
            continue;
        }
        try {
            write_output(render(*item.report, scenarios[i].output.format), scenarios[i].output.path);
        } catch (const OutputError& e) {
            std::cerr << "euclid4: " << e.what() << '\n';
            rc = kExitUsage;
            continue;
        }
        rc = std::max(rc, exit_code(*item.report));
    }
    return rc;
}
