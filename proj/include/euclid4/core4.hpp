#ifndef EUCLID4_CORE4_HPP
#define EUCLID4_CORE4_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "euclid4/constants.hpp"
#include "euclid4/errors.hpp"

namespace euclid4 {

/// Euclidean four-vector laid out as (w, x, y, z).
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Component indices into a Vector4. Eigen's own w() accessor refers to index
/// 3 and must not be used on these vectors.
enum Axis : int { W = 0, X = 1, Y = 2, Z = 3 };

/// Sign of dw/dt. Zero only for light-speed motion.
enum class Branch : int { Negative = -1, Zero = 0, Positive = 1 };

constexpr int sign_of(Branch b) { return static_cast<int>(b); }

template <typename Scalar>
Vector4<Scalar> make_vector4(Scalar w, const Vector3<Scalar>& xyz)
{
    Vector4<Scalar> v;
    v << w, xyz;
    return v;
}

template <typename Derived>
auto spatial(const Eigen::MatrixBase<Derived>& v)
{
    return v.template tail<3>();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v)
{
    return v.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v, const char* what)
{
    if (!v.allFinite()) {
        throw InvalidInput(std::string(what) + ": non-finite component");
    }
}

template <std::floating_point Scalar>
void require_finite(Scalar x, const char* what)
{
    if (!std::isfinite(x)) {
        throw InvalidInput(std::string(what) + ": non-finite value");
    }
}

template <typename Scalar>
struct FourVelocity
{
    Vector4<Scalar> u;
    Branch branch;
};

template <typename Scalar>
struct FourMomentum
{
    Vector4<Scalar> p;
};

template <typename Scalar>
Scalar euclid_inner(const Vector4<Scalar>& a, const Vector4<Scalar>& b)
{
    require_finite(a, "euclid_inner");
    require_finite(b, "euclid_inner");
    return a.dot(b);
}

namespace detail {

/// Squared speed ratio |v|^2/c^2 after rejecting v beyond c. Values within a
/// few ulp of c are clamped to exactly 1.
template <typename Scalar>
Scalar beta_squared_at_most_light(const Vector3<Scalar>& v3, Scalar c, const char* what)
{
    require_finite(v3, what);
    const Scalar beta2 = v3.squaredNorm() / (c * c);
    constexpr Scalar slack = 8 * std::numeric_limits<Scalar>::epsilon();
    if (beta2 > Scalar(1) + slack) {
        throw SuperluminalError(std::string(what) + ": |v| exceeds c");
    }
    return beta2 > Scalar(1) ? Scalar(1) : beta2;
}

} // namespace detail

/// dt0/dt = sqrt(1 - v^2/c^2).
template <typename Scalar>
Scalar proper_time_rate(const Vector3<Scalar>& v3,
                        const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar beta2 = detail::beta_squared_at_most_light(v3, k.c, "proper_time_rate");
    const Scalar beta = std::sqrt(beta2);
    return std::sqrt((Scalar(1) - beta) * (Scalar(1) + beta));
}

/**
Four-velocity with |u| = c. At |v3| = c the w-component is exactly zero and
the branch is reported as Branch::Zero whatever was requested.
*/
template <typename Scalar>
FourVelocity<Scalar> four_velocity(const Vector3<Scalar>& v3, Branch branch,
                                   const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar rate = proper_time_rate(v3, k);
    if (rate == Scalar(0)) {
        return {make_vector4(Scalar(0), v3), Branch::Zero};
    }
    if (branch == Branch::Zero) {
        throw InvalidInput("four_velocity: branch must be +1 or -1 below light speed");
    }
    return {make_vector4(Scalar(sign_of(branch)) * k.c * rate, v3), branch};
}

/// p = m u, with m the relativistic mass.
template <typename Scalar>
FourMomentum<Scalar> momentum_from_velocity(Scalar m, const FourVelocity<Scalar>& u)
{
    require_finite(m, "momentum_from_velocity");
    require_finite(u.u, "momentum_from_velocity");
    if (m < 0) {
        throw InvalidInput("momentum_from_velocity: negative mass");
    }
    return {m * u.u};
}

/// E = |p| c.
template <typename Scalar>
Scalar energy_of(const FourMomentum<Scalar>& p,
                 const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    return p.p.norm() * k.c;
}

/// Relativistic mass E/c^2.
template <typename Scalar>
Scalar mass_of(const FourMomentum<Scalar>& p,
               const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    return p.p.norm() / k.c;
}

/// w-momentum of a simple particle, +-m0 c.
template <typename Scalar>
Scalar w_momentum_simple(Scalar m0, Branch branch,
                         const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    if (m0 < 0) {
        throw InvalidInput("w_momentum_simple: negative rest mass");
    }
    return Scalar(sign_of(branch)) * (m0 * k.c);
}

/**
w-momentum carried by charge q: -q m_e c / e with e the signed electron
charge. Evaluated as -(q/e)(m_e c) so an electron gives exactly -m_e c.
*/
template <typename Scalar>
Scalar w_momentum_from_charge(Scalar q,
                              const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(q, "w_momentum_from_charge");
    return -(q / k.e_electron) * (k.m_e * k.c);
}

/// h / (m c).
template <typename Scalar>
Scalar compton_wavelength(Scalar m,
                          const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(m, "compton_wavelength");
    if (!(m > 0)) {
        throw InvalidInput("compton_wavelength: mass must be positive");
    }
    return k.h / (m * k.c);
}

/**
Klein's compactification circumference h c sqrt(2 kappa) / e. The charge is
taken in Gaussian form |e| / sqrt(4 pi epsilon0), which with SI h, c and
kappa = 8 pi G / c^4 lands at about 8.4e-33 m.
*/
template <typename Scalar>
Scalar klein_circumference(const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar e_gauss =
        k.e_magnitude() / std::sqrt(Scalar(4) * std::numbers::pi_v<Scalar> * k.epsilon0);
    return k.h * k.c * std::sqrt(Scalar(2) * k.kappa()) / e_gauss;
}

} // namespace euclid4

#endif // EUCLID4_CORE4_HPP
