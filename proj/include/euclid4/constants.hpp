#ifndef EUCLID4_CONSTANTS_HPP
#define EUCLID4_CONSTANTS_HPP

#include <filesystem>
#include <numbers>
#include <string_view>

namespace euclid4 {

/**
SI physical constants. The electron charge is stored signed (negative).
hbar and kappa are always recomputed from h, G and c, so overriding a base
constant keeps them consistent.
*/
template <typename Scalar>
struct PhysicalConstants
{
    Scalar c;          ///< m/s
    Scalar h;          ///< J s
    Scalar e_electron; ///< C, negative
    Scalar m_e;        ///< kg
    Scalar G;          ///< m^3 / (kg s^2)
    Scalar epsilon0;   ///< F/m

    static constexpr PhysicalConstants codata()
    {
        return {Scalar(299792458.0),     Scalar(6.62607015e-34),
                Scalar(-1.602176634e-19), Scalar(9.1093837015e-31),
                Scalar(6.67430e-11),     Scalar(8.8541878128e-12)};
    }

    constexpr Scalar hbar() const { return h / (Scalar(2) * std::numbers::pi_v<Scalar>); }

    /// Einstein gravitational constant 8 pi G / c^4.
    constexpr Scalar kappa() const
    {
        const Scalar c2 = c * c;
        return Scalar(8) * std::numbers::pi_v<Scalar> * G / (c2 * c2);
    }

    /// Magnitude of the elementary charge.
    constexpr Scalar e_magnitude() const { return e_electron < 0 ? -e_electron : e_electron; }

    /// kg per MeV/c^2.
    constexpr Scalar kg_per_mev() const { return Scalar(1e6) * e_magnitude() / (c * c); }

    constexpr bool operator==(const PhysicalConstants&) const = default;
};

using Constants = PhysicalConstants<double>;

/**
Parse a constants override document: one `key = value` pair per line, `#`
starts a comment. Recognised keys are c, h, e_electron, m_e, G and epsilon0;
unspecified constants keep their CODATA value. Throws InvalidInput naming the
offending line on unknown keys, derived keys (hbar, kappa), duplicates or
non-numeric values.
*/
Constants parse_constants(std::string_view text, Constants base = Constants::codata());

Constants load_constants(const std::filesystem::path& path);

} // namespace euclid4

#endif // EUCLID4_CONSTANTS_HPP
