#include "euclid4/constants.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

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

double* slot_for(Constants& k, std::string_view key)
{
    if (key == "c") return &k.c;
    if (key == "h") return &k.h;
    if (key == "e_electron") return &k.e_electron;
    if (key == "m_e") return &k.m_e;
    if (key == "G") return &k.G;
    if (key == "epsilon0") return &k.epsilon0;
    return nullptr;
}

} // namespace

Constants parse_constants(std::string_view text, Constants base)
{
    std::set<std::string, std::less<>> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto where = "constants line " + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput(where + "expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value_text = trim(line.substr(eq + 1));
        if (key == "hbar" || key == "kappa") {
            throw InvalidInput(where + std::string(key) + " is derived and cannot be overridden");
        }
        double* slot = slot_for(base, key);
        if (slot == nullptr) {
            throw InvalidInput(where + "unknown constant '" + std::string(key) + "'");
        }
        if (!seen.emplace(key).second) {
            throw InvalidInput(where + "duplicate constant '" + std::string(key) + "'");
        }
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size() ||
            !std::isfinite(value)) {
            throw InvalidInput(where + "invalid number '" + std::string(value_text) + "'");
        }
        *slot = value;
    }
    if (!(base.c > 0) || !(base.h > 0) || !(base.m_e > 0) || !(base.G > 0) ||
        !(base.epsilon0 > 0) || !(base.e_electron < 0)) {
        throw InvalidInput("constants: c, h, m_e, G, epsilon0 must be positive and "
                           "e_electron negative");
    }
    return base;
}

Constants load_constants(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open constants file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_constants(buffer.str());
}

} // namespace euclid4
