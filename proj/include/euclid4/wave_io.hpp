#ifndef EUCLID4_WAVE_IO_HPP
#define EUCLID4_WAVE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "euclid4/wavemech.hpp"

namespace euclid4 {

/**
Wave-state documents are JSON lists of components
{k_w, k_x, k_y, k_z, amplitude_re, amplitude_im}. omega defaults to c|k|; an
explicit "omega" (rad/s) overrides it and is how detuned modes are written.
*/
WaveState<double> wave_state_from_json(const nlohmann::json& doc, const Constants& k = Constants::codata());
nlohmann::ordered_json wave_state_to_json(const WaveState<double>& state,
                                          const Constants& k = Constants::codata());

WaveState<double> parse_wave_state(std::string_view text, const Constants& k = Constants::codata());
WaveState<double> load_wave_state(const std::filesystem::path& path, const Constants& k = Constants::codata());

} // namespace euclid4

#endif // EUCLID4_WAVE_IO_HPP
