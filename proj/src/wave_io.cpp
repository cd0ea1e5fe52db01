#include "euclid4/wave_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace euclid4 {
namespace {

constexpr std::array<const char*, 6> kRequiredKeys{"k_w", "k_x", "k_y", "k_z", "amplitude_re", "amplitude_im"};

double number_at(const nlohmann::json& item, const char* key, const std::string& where)
{
    const auto it = item.find(key);
    if (it == item.end()) {
        throw InvalidInput(where + ": missing '" + key + "'");
    }
    if (!it->is_number()) {
        throw InvalidInput(where + ": '" + key + "' must be a number");
    }
    return it->get<double>();
}

} // namespace

WaveState<double> wave_state_from_json(const nlohmann::json& doc, const Constants& k)
{
    if (!doc.is_array()) {
        throw InvalidInput("wave state: expected a list of components");
    }
    WaveState<double> state;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const auto where = "wave component " + std::to_string(i);
        if (!item.is_object()) {
            throw InvalidInput(where + ": expected an object");
        }
        for (const auto& [key, _] : item.items()) {
            const bool known = key == "omega" || std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) !=
                                                     kRequiredKeys.end();
            if (!known) {
                throw InvalidInput(where + ": unknown key '" + key + "'");
            }
        }
        const Vector4<double> k4(number_at(item, "k_w", where), number_at(item, "k_x", where),
                                 number_at(item, "k_y", where), number_at(item, "k_z", where));
        const std::complex<double> amplitude(number_at(item, "amplitude_re", where),
                                             number_at(item, "amplitude_im", where));
        auto wave = make_plane_wave(k4, amplitude, k);
        if (item.contains("omega")) {
            wave.omega = number_at(item, "omega", where);
        }
        state.components.push_back(wave);
    }
    return state;
}

nlohmann::ordered_json wave_state_to_json(const WaveState<double>& state, const Constants& k)
{
    auto doc = nlohmann::ordered_json::array();
    for (const auto& wave : state.components) {
        nlohmann::ordered_json item;
        item["k_w"] = wave.k[W];
        item["k_x"] = wave.k[X];
        item["k_y"] = wave.k[Y];
        item["k_z"] = wave.k[Z];
        item["amplitude_re"] = wave.amplitude.real();
        item["amplitude_im"] = wave.amplitude.imag();
        if (!satisfies_dispersion(wave, 1e-12, k)) {
            item["omega"] = wave.omega;
        }
        doc.push_back(std::move(item));
    }
    return doc;
}

WaveState<double> parse_wave_state(std::string_view text, const Constants& k)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("wave state: ") + e.what());
    }
    return wave_state_from_json(doc, k);
}

WaveState<double> load_wave_state(const std::filesystem::path& path, const Constants& k)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open wave state " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_wave_state(buffer.str(), k);
}

} // namespace euclid4
