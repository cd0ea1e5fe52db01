#include "euclid4/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

namespace euclid4::cli {

namespace {

using nlohmann::ordered_json;

// Same shortest round-trip form the JSON writer uses.
std::string format_number(double x) { return nlohmann::json(x).dump(); }

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace

std::string_view comparison_name(Comparison c)
{
    switch (c) {
    case Comparison::Absolute: return "absolute";
    case Comparison::Relative: return "relative";
    case Comparison::AtLeast: return "at_least";
    }
    return "unknown";
}

Check make_check(std::string name, double value, double expected, Comparison comparison,
                 std::optional<double> tolerance, bool required)
{
    Check c{std::move(name), value, expected, tolerance, comparison, required, false};
    if (std::isfinite(value)) {
        const double tol = tolerance.value_or(0.0);
        switch (comparison) {
        case Comparison::Absolute: c.pass = std::abs(value - expected) <= tol; break;
        case Comparison::Relative: c.pass = std::abs(value - expected) <= tol * std::abs(expected); break;
        case Comparison::AtLeast: c.pass = value >= expected; break;
        }
    }
    return c;
}

std::string_view status_of(const Check& check)
{
    if (check.pass) {
        return "pass";
    }
    return check.required ? "fail" : "reported-fail";
}

bool RunReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.required; });
}

int exit_code(const RunReport& report) { return report.passed() ? kExitPass : kExitFail; }

ordered_json to_json(const RunReport& report, bool include_timing)
{
    ordered_json doc;
    doc["label"] = report.label;
    doc["kind"] = report.kind;
    doc["seed"] = report.seed;
    doc["status"] = report.passed() ? "pass" : "fail";

    std::size_t passed = 0, failed = 0, reported = 0;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
        passed += c.pass;
        failed += !c.pass && c.required;
        reported += !c.pass && !c.required;
        ordered_json row;
        row["name"] = c.name;
        row["value"] = c.value;
        row["expected"] = c.expected;
        row["tolerance"] = c.tolerance ? ordered_json(*c.tolerance) : ordered_json(nullptr);
        row["comparison"] = comparison_name(c.comparison);
        row["required"] = c.required;
        row["status"] = status_of(c);
        checks.push_back(std::move(row));
    }
    doc["summary"] = {{"checks", report.checks.size()},
                      {"passed", passed},
                      {"failed", failed},
                      {"reported_failures", reported}};
    doc["checks"] = std::move(checks);
    doc["details"] = report.details;
    if (include_timing) {
        doc["timing"] = {{"elapsed_ms", report.elapsed_ms}};
    }
    return doc;
}

std::string to_csv(const RunReport& report)
{
    std::string out = "scenario,check,value,expected,tolerance,status\n";
    for (const auto& c : report.checks) {
        out += csv_field(report.label) + ',' + csv_field(c.name) + ',' + format_number(c.value) + ',' +
               format_number(c.expected) + ',' + (c.tolerance ? format_number(*c.tolerance) : "") + ',' +
               std::string(status_of(c)) + '\n';
    }
    return out;
}

std::string render(const RunReport& report, Format format)
{
    return format == Format::Json ? to_json(report).dump(2) + "\n" : to_csv(report);
}

std::string strip_timing(const std::string& json_text)
{
    auto doc = ordered_json::parse(json_text);
    doc.erase("timing");
    return doc.dump(2) + "\n";
}

void write_output(const std::string& text, const std::string& path)
{
    if (path == "-") {
        std::cout << text << std::flush;
        if (!std::cout) {
            throw OutputError("failed writing to standard output");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open output path " + path);
    }
    out << text;
    out.close();
    if (!out) {
        throw OutputError("failed writing " + path);
    }
}

} // namespace euclid4::cli
