#ifndef EUCLID4_TRANSFORMS_HPP
#define EUCLID4_TRANSFORMS_HPP

#include <cmath>
#include <algorithm>
#include <limits>
#include <utility>

#include "euclid4/core4.hpp"

// Passive boosts: quantities are re-described from a frame moving at +v
// relative to the original one. Boosts act on three-space only; the
// w-component of every four-vector is carried through untouched.

namespace euclid4 {

/// Boosts are accepted up to beta = 1 - 1e-12.
inline constexpr double kMaxBeta = 1.0 - 1e-12;

template <typename Scalar>
struct BoostParams
{
    Vector3<Scalar> velocity;
    Vector3<Scalar> direction; ///< unit vector, zero for the identity boost
    Scalar beta;
    Scalar gamma;
};

template <typename Scalar>
BoostParams<Scalar> make_boost(const Vector3<Scalar>& v3,
                               const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(v3, "boost velocity");
    const Scalar speed = v3.norm();
    const Scalar beta = speed / k.c;
    if (!(beta <= Scalar(kMaxBeta))) {
        throw SuperluminalError("boost velocity must satisfy |v| < c");
    }
    // (1-b)(1+b) keeps precision as b -> 1
    const Scalar gamma = Scalar(1) / std::sqrt((Scalar(1) - beta) * (Scalar(1) + beta));
    const Vector3<Scalar> n = speed > 0 ? Vector3<Scalar>(v3 / speed) : Vector3<Scalar>::Zero();
    return {v3, n, beta, gamma};
}

template <typename Scalar>
Scalar gamma(const Vector3<Scalar>& v3,
             const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    return make_boost(v3, k).gamma;
}

template <typename Scalar>
Scalar relativistic_mass(Scalar m0, const Vector3<Scalar>& v3,
                         const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(m0, "relativistic_mass");
    if (m0 < 0) {
        throw InvalidInput("relativistic_mass: negative rest mass");
    }
    return m0 * gamma(v3, k);
}

/**
Transform a (temporal, spatial) pair the way energy and three-momentum
transform: `time_like` is E (or omega), `space` is p3 (or k3) and `c2` is the
conversion factor such that time_like * v / c2 has the units of `space`.
*/
template <typename Scalar>
std::pair<Scalar, Vector3<Scalar>> boost_pair(Scalar time_like, const Vector3<Scalar>& space,
                                              const BoostParams<Scalar>& b, Scalar c2)
{
    if (b.beta == Scalar(0)) {
        return {time_like, space};
    }
    const Scalar parallel = space.dot(b.direction);
    const Scalar speed = b.velocity.norm();
    const Scalar parallel_new = b.gamma * (parallel - speed * time_like / c2);
    const Scalar time_like_new = b.gamma * (time_like - b.velocity.dot(space));
    return {time_like_new, space + (parallel_new - parallel) * b.direction};
}

/**
Doppler-shifted energy of a single eigenmode, gamma (E - hbar v.k3). The mode
must satisfy E = hbar c |k| to 1e-9 relative.
*/
template <typename Scalar>
Scalar doppler_shift(Scalar energy, const Vector4<Scalar>& k4, const Vector3<Scalar>& v3,
                     const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(energy, "doppler_shift");
    require_finite(k4, "doppler_shift");
    const auto b = make_boost(v3, k);
    const Scalar expected = k.hbar() * k.c * k4.norm();
    if (std::abs(energy - expected) > Scalar(1e-9) * std::max(std::abs(energy), expected)) {
        throw PreconditionError("doppler_shift: energy must equal hbar c |k|");
    }
    return b.gamma * (energy - k.hbar() * v3.dot(spatial(k4)));
}

/// Boost a wave vector and its frequency; k_w is unchanged.
template <typename Scalar>
std::pair<Vector4<Scalar>, Scalar>
boost_wave_vector(const Vector4<Scalar>& k4, Scalar omega, const Vector3<Scalar>& v3,
                  const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(k4, "boost_wave_vector");
    const auto b = make_boost(v3, k);
    const auto [omega_new, k3_new] = boost_pair<Scalar>(omega, spatial(k4), b, k.c * k.c);
    return {make_vector4(k4[W], k3_new), omega_new};
}

/**
Boost a four-momentum. Energy is |p| c; the longitudinal three-momentum
picks up -gamma v E / c^2 and the w-component is returned bit-for-bit.
*/
template <typename Scalar>
FourMomentum<Scalar> boost_momentum(const FourMomentum<Scalar>& p, const Vector3<Scalar>& v3,
                                    const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(p.p, "boost_momentum");
    const auto b = make_boost(v3, k);
    const Scalar energy = energy_of(p, k);
    const auto boosted = boost_pair<Scalar>(energy, spatial(p.p), b, k.c * k.c);
    return {make_vector4(p.p[W], boosted.second)};
}

template <typename Scalar>
struct Event4
{
    Scalar t;
    Vector4<Scalar> position;
};

/// Lorentz transform of (t, x, y, z) with w' = w.
template <typename Scalar>
Event4<Scalar> boost_event(const Event4<Scalar>& ev, const Vector3<Scalar>& v3,
                           const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(ev.t, "boost_event");
    require_finite(ev.position, "boost_event");
    const auto b = make_boost(v3, k);
    if (b.beta == Scalar(0)) {
        return ev;
    }
    const Vector3<Scalar> r = spatial(ev.position);
    const Scalar parallel = r.dot(b.direction);
    const Scalar speed = v3.norm();
    const Scalar t_new = b.gamma * (ev.t - v3.dot(r) / (k.c * k.c));
    const Scalar parallel_new = b.gamma * (parallel - speed * ev.t);
    return {t_new, make_vector4(ev.position[W], Vector3<Scalar>(r + (parallel_new - parallel) * b.direction))};
}

/**
w-displacement sqrt(c^2 dt^2 - dx^2 - dy^2 - dz^2) between two events.
Radicands negative by no more than rounding noise are treated as lightlike;
genuinely spacelike separations raise DomainError.
*/
template <typename Scalar>
Scalar spacetime_interval(Scalar dt, Scalar dx, Scalar dy, Scalar dz,
                          const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Vector4<Scalar> d(dt, dx, dy, dz);
    require_finite(d, "spacetime_interval");
    const Scalar temporal = k.c * k.c * dt * dt;
    const Scalar radicand = temporal - (dx * dx + dy * dy + dz * dz);
    if (radicand < 0) {
        if (-radicand <= 16 * std::numeric_limits<Scalar>::epsilon() * temporal) {
            return Scalar(0);
        }
        throw DomainError("spacetime_interval: spacelike separation has no real w-displacement");
    }
    return std::sqrt(radicand);
}

template <typename Scalar>
Scalar spacetime_interval(const Event4<Scalar>& a, const Event4<Scalar>& b,
                          const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Vector4<Scalar> d = b.position - a.position;
    return spacetime_interval(b.t - a.t, d[X], d[Y], d[Z], k);
}

/// (E^2 - |p3|^2 c^2 - m0^2 c^4) / E^2.
template <typename Scalar>
Scalar verify_energy_momentum(Scalar energy, const Vector3<Scalar>& p3, Scalar m0,
                              const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar c2 = k.c * k.c;
    const Scalar rest = m0 * c2;
    const Scalar rhs = p3.squaredNorm() * c2 + rest * rest;
    const Scalar lhs = energy * energy;
    const Scalar scale = lhs > 0 ? lhs : (rhs > 0 ? rhs : Scalar(1));
    return (lhs - rhs) / scale;
}

} // namespace euclid4

#endif // EUCLID4_TRANSFORMS_HPP
