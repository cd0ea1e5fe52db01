#ifndef EUCLID4_CLI_TOLERANCES_HPP
#define EUCLID4_CLI_TOLERANCES_HPP

// Default check thresholds. Scenario runs, the acceptance suite and the README
// all read from here.

namespace euclid4::cli::defaults {

/// Relative imbalance allowed in a conserved quantity.
inline constexpr double conservation = 1e-12;
/// Closed-form identities evaluated without discretisation.
inline constexpr double identity = 1e-12;
/// Boost and composite closures, relative.
inline constexpr double closure = 1e-10;

/// Grid step as a fraction of the shortest wavelength scale, h|k|.
inline constexpr double step_hk = 1e-3;
/// Coarse h|k| for the convergence-order measurement; the fine step is half.
inline constexpr double order_step_hk = 0.08;
inline constexpr double residual = 1e-6;
inline constexpr double rest_residual = 1e-10;
inline constexpr double order = 2.0;
inline constexpr double order_tolerance = 0.1;

inline constexpr double schrodinger_max_residual = 1e-2;
inline constexpr double schrodinger_exponent = 2.0;
inline constexpr double schrodinger_exponent_tolerance = 0.2;

inline constexpr double compton_electron = 2.426e-12;   // m
inline constexpr double compton_tolerance = 1e-3;
inline constexpr double klein_estimate = 8e-33;         // m
inline constexpr double klein_estimate_tolerance = 0.5;
inline constexpr double klein_derived = 8.4e-33;        // m
inline constexpr double klein_derived_tolerance = 1e-2;
inline constexpr double scale_ratio_min = 1e20;

} // namespace euclid4::cli::defaults

#endif // EUCLID4_CLI_TOLERANCES_HPP
