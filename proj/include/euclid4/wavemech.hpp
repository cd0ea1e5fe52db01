#ifndef EUCLID4_WAVEMECH_HPP
#define EUCLID4_WAVEMECH_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "euclid4/core4.hpp"
#include "euclid4/transforms.hpp"

namespace euclid4 {

/**
Scalar plane-wave eigenmode A exp(i(k.x - omega t)) of the four-dimensional
wave equation. make_plane_wave() ties omega to c|k|; the aggregate itself
does not, so deliberately detuned modes can be built for residual checks.
*/
template <typename Scalar>
struct PlaneWave
{
    Vector4<Scalar> k; ///< rad/m, (k_w, k_x, k_y, k_z)
    Scalar omega;      ///< rad/s
    std::complex<Scalar> amplitude;
};

template <typename Scalar>
struct WaveState
{
    std::vector<PlaneWave<Scalar>> components;
};

template <typename Scalar>
PlaneWave<Scalar> make_plane_wave(const Vector4<Scalar>& k4, std::complex<Scalar> amplitude,
                                  const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(k4, "make_plane_wave");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
        throw InvalidInput("make_plane_wave: non-finite amplitude");
    }
    return {k4, k.c * k4.norm(), amplitude};
}

template <typename Scalar>
bool satisfies_dispersion(const PlaneWave<Scalar>& wave, Scalar rel_tol = Scalar(1e-12),
                          const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar expected = k.c * wave.k.norm();
    return std::abs(wave.omega - expected) <= rel_tol * expected;
}

/// hbar k.
template <typename Scalar>
Vector4<Scalar> momentum_of(const PlaneWave<Scalar>& wave,
                            const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    return k.hbar() * wave.k;
}

/// hbar omega.
template <typename Scalar>
Scalar energy_of(const PlaneWave<Scalar>& wave,
                 const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    return k.hbar() * wave.omega;
}

template <typename Scalar>
std::complex<Scalar> evaluate(const WaveState<Scalar>& state, const Vector4<Scalar>& x, Scalar t)
{
    std::complex<Scalar> sum{0, 0};
    for (const auto& wave : state.components) {
        sum += wave.amplitude * std::polar(Scalar(1), wave.k.dot(x) - wave.omega * t);
    }
    return sum;
}

/// -i hbar dPsi/dx_j by central difference with step h.
template <typename Scalar>
std::complex<Scalar> apply_momentum_operator(const WaveState<Scalar>& state, Axis axis,
                                             const Vector4<Scalar>& x, Scalar t, Scalar h,
                                             const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    if (!(h > 0)) {
        throw InvalidInput("apply_momentum_operator: step must be positive");
    }
    Vector4<Scalar> step = Vector4<Scalar>::Zero();
    step[axis] = h;
    const auto derivative = (evaluate(state, Vector4<Scalar>(x + step), t) -
                             evaluate(state, Vector4<Scalar>(x - step), t)) /
                            (Scalar(2) * h);
    return std::complex<Scalar>(0, -k.hbar()) * derivative;
}

/// i hbar dPsi/dt by central difference with step dt.
template <typename Scalar>
std::complex<Scalar> apply_energy_operator(const WaveState<Scalar>& state, const Vector4<Scalar>& x,
                                           Scalar t, Scalar dt,
                                           const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    if (!(dt > 0)) {
        throw InvalidInput("apply_energy_operator: step must be positive");
    }
    const auto derivative = (evaluate(state, x, t + dt) - evaluate(state, x, t - dt)) / (Scalar(2) * dt);
    return std::complex<Scalar>(0, k.hbar()) * derivative;
}

/**
Closure of E^2 = c^2 P^2 for an eigenmode: eigenvalue estimates e = (E Psi)/Psi
and p_j = (P_j Psi)/Psi from the finite-difference operators, returning
|e^2 - c^2 sum_j p_j^2| / (hbar omega)^2.
*/
template <typename Scalar>
Scalar operator_closure_residual(const WaveState<Scalar>& state, const Vector4<Scalar>& x, Scalar t,
                                 Scalar h, Scalar dt,
                                 const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const auto psi = evaluate(state, x, t);
    if (std::abs(psi) == Scalar(0)) {
        throw PreconditionError("operator_closure_residual: field vanishes at the sample point");
    }
    const auto e = apply_energy_operator(state, x, t, dt, k) / psi;
    std::complex<Scalar> p2{0, 0};
    for (int axis = W; axis <= Z; ++axis) {
        const auto p = apply_momentum_operator(state, static_cast<Axis>(axis), x, t, h, k) / psi;
        p2 += p * p;
    }
    Scalar scale = 0;
    for (const auto& wave : state.components) {
        scale = std::max(scale, energy_of(wave, k));
    }
    if (scale == Scalar(0)) {
        scale = Scalar(1);
    }
    return std::abs(e * e - k.c * k.c * p2) / (scale * scale);
}

/// Central-difference order from errors measured at step h and h / ratio.
template <typename Scalar>
Scalar measured_order(Scalar coarse_error, Scalar fine_error, Scalar ratio = Scalar(2))
{
    return std::log(coarse_error / fine_error) / std::log(ratio);
}

/// Sampling lattice for residual checks.
template <typename Scalar>
struct GridSpec
{
    Vector4<Scalar> spacing;  ///< m per axis, (w, x, y, z)
    Scalar dt;                ///< s
    std::array<int, 4> counts; ///< samples per spatial axis
    int time_count;
    Vector4<Scalar> origin;
    Scalar t0;

    static GridSpec uniform(Scalar h, Scalar dt, int samples = 5,
                            Vector4<Scalar> origin = Vector4<Scalar>::Zero(), Scalar t0 = 0)
    {
        return {Vector4<Scalar>::Constant(h), dt, {samples, samples, samples, samples}, samples, origin, t0};
    }
};

/// Upper bound on the number of lattice nodes a residual check may visit.
inline constexpr std::size_t kMaxGridSamples = 17 * 17 * 17 * 17;

namespace detail {

template <typename Scalar>
void validate_grid(const GridSpec<Scalar>& grid, bool with_w)
{
    std::size_t total = static_cast<std::size_t>(grid.time_count < 0 ? 0 : grid.time_count);
    for (int axis = with_w ? W : X; axis <= Z; ++axis) {
        if (!(grid.spacing[axis] > 0)) {
            throw PreconditionError("grid spacing must be positive");
        }
        if (grid.counts[axis] < 5) {
            throw PreconditionError("grid needs at least 5 samples per axis");
        }
        total *= static_cast<std::size_t>(grid.counts[axis]);
    }
    if (!(grid.dt > 0)) {
        throw PreconditionError("grid dt must be positive");
    }
    if (grid.time_count < 5) {
        throw PreconditionError("grid needs at least 5 time samples");
    }
    if (!grid.origin.allFinite() || !std::isfinite(grid.t0)) {
        throw PreconditionError("grid origin must be finite");
    }
    if (total > kMaxGridSamples) {
        throw PreconditionError("grid exceeds " + std::to_string(kMaxGridSamples) + " samples");
    }
}

/// Visit every interior node of the lattice. With with_w false the w
/// coordinate stays at origin[W].
template <typename Scalar, typename Visit>
void for_each_interior(const GridSpec<Scalar>& grid, bool with_w, Visit&& visit)
{
    std::array<int, 4> index{};
    const int first_axis = with_w ? W : X;
    std::function<void(int)> recurse = [&](int axis) {
        if (axis > Z) {
            for (int it = 1; it + 1 < grid.time_count; ++it) {
                Vector4<Scalar> x = grid.origin;
                for (int a = first_axis; a <= Z; ++a) {
                    x[a] += Scalar(index[a]) * grid.spacing[a];
                }
                visit(x, grid.t0 + Scalar(it) * grid.dt);
            }
            return;
        }
        for (index[axis] = 1; index[axis] + 1 < grid.counts[axis]; ++index[axis]) {
            recurse(axis + 1);
        }
    };
    recurse(first_axis);
}

/// Second central difference along a spatial axis.
template <typename Field, typename Scalar>
auto second_difference(const Field& field, const Vector4<Scalar>& x, Scalar t, int axis, Scalar h)
{
    Vector4<Scalar> step = Vector4<Scalar>::Zero();
    step[axis] = h;
    return (field(Vector4<Scalar>(x + step), t) - Scalar(2) * field(x, t) + field(Vector4<Scalar>(x - step), t)) /
           (h * h);
}

template <typename Field, typename Scalar>
auto second_time_difference(const Field& field, const Vector4<Scalar>& x, Scalar t, Scalar dt)
{
    return (field(x, t + dt) - Scalar(2) * field(x, t) + field(x, t - dt)) / (dt * dt);
}

template <typename Scalar>
Scalar curvature_scale(const WaveState<Scalar>& state, bool spatial_only)
{
    Scalar scale = 0;
    for (const auto& wave : state.components) {
        const Scalar k2 = spatial_only ? spatial(wave.k).squaredNorm() : wave.k.squaredNorm();
        scale += std::abs(wave.amplitude) * k2;
    }
    return scale;
}

template <typename Scalar>
Scalar mass_wavenumber(Scalar m0, const PhysicalConstants<Scalar>& k)
{
    return m0 * k.c / k.hbar();
}

template <typename Scalar>
void require_mass_shell(const WaveState<Scalar>& state, Scalar m0, const PhysicalConstants<Scalar>& k,
                        const char* what)
{
    require_finite(m0, what);
    if (m0 < 0) {
        throw PreconditionError(std::string(what) + ": negative rest mass");
    }
    const Scalar mu = mass_wavenumber(m0, k);
    for (const auto& wave : state.components) {
        const Scalar kw = std::abs(wave.k[W]);
        const Scalar tol = Scalar(1e-12) * (mu > 0 ? mu : wave.k.norm());
        if (std::abs(kw - mu) > tol) {
            throw PreconditionError(std::string(what) +
                                    ": every component needs k_w = +-m0 c / hbar for the given m0");
        }
    }
}

} // namespace detail

/**
Max over interior lattice nodes of |sum_j d2Psi/dx_j^2 - c^-2 d2Psi/dt^2|,
normalised by sum_i |A_i| |k_i|^2. All four spatial axes and time are
sampled with second central differences.
*/
template <typename Scalar>
Scalar wave_equation_residual(const WaveState<Scalar>& state, const GridSpec<Scalar>& grid,
                              const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    detail::validate_grid(grid, true);
    const auto field = [&](const Vector4<Scalar>& x, Scalar t) { return evaluate(state, x, t); };
    const Scalar inv_c2 = Scalar(1) / (k.c * k.c);
    Scalar worst = 0;
    detail::for_each_interior(grid, true, [&](const Vector4<Scalar>& x, Scalar t) {
        std::complex<Scalar> lap{0, 0};
        for (int axis = W; axis <= Z; ++axis) {
            lap += detail::second_difference(field, x, t, axis, grid.spacing[axis]);
        }
        const auto r = lap - inv_c2 * detail::second_time_difference(field, x, t, grid.dt);
        worst = std::max(worst, std::abs(r));
    });
    const Scalar scale = detail::curvature_scale(state, false);
    return worst / (scale > 0 ? scale : Scalar(1));
}

/**
Klein-Gordon residual -c^-2 d2Psi/dt^2 + lap3 Psi - (m0 c/hbar)^2 Psi on the
three-space lattice at w = origin[W]. Time and w dependence enter through
each mode's frequency analytically; only the spatial Laplacian is sampled.
Every component must sit on the mass shell |k_w| = m0 c / hbar.
*/
template <typename Scalar>
Scalar klein_gordon_residual(const WaveState<Scalar>& state, Scalar m0, const GridSpec<Scalar>& grid,
                             const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    detail::require_mass_shell(state, m0, k, "klein_gordon_residual");
    detail::validate_grid(grid, false);
    const Scalar mu = detail::mass_wavenumber(m0, k);
    const Scalar mu2 = mu * mu;
    const Scalar inv_c2 = Scalar(1) / (k.c * k.c);
    const auto field = [&](const Vector4<Scalar>& x, Scalar t) { return evaluate(state, x, t); };
    Scalar worst = 0;
    detail::for_each_interior(grid, false, [&](const Vector4<Scalar>& x, Scalar t) {
        std::complex<Scalar> r{0, 0};
        for (const auto& wave : state.components) {
            // -c^-2 d2/dt2 -> omega^2 / c^2 for this mode
            const Scalar coefficient = wave.omega * wave.omega * inv_c2 - mu2;
            r += coefficient * wave.amplitude * std::polar(Scalar(1), wave.k.dot(x) - wave.omega * t);
        }
        for (int axis = X; axis <= Z; ++axis) {
            r += detail::second_difference(field, x, t, axis, grid.spacing[axis]);
        }
        worst = std::max(worst, std::abs(r));
    });
    const Scalar scale = detail::curvature_scale(state, false);
    return worst / (scale > 0 ? scale : Scalar(1));
}

/// Largest |k3| hbar / (m0 c) accepted by schrodinger_residual.
inline constexpr double kMaxNonRelativisticRatio = 0.1;

/**
Free Schrodinger residual i hbar dphi/dt + (hbar^2 / 2 m0) lap3 phi for the
envelope phi = Psi exp(i m0 c^2 t / hbar), sampled on the three-space
lattice at w = origin[W]. Normalised by the kinetic scale
sum_i |A_i| hbar^2 |k3_i|^2 / (2 m0), or the rest energy when every mode is
at rest, so the result tracks the non-relativistic truncation
(|k3| hbar / (m0 c))^2 / 4.
*/
template <typename Scalar>
Scalar schrodinger_residual(const WaveState<Scalar>& state, Scalar m0, const GridSpec<Scalar>& grid,
                            const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    if (!(m0 > 0)) {
        throw PreconditionError("schrodinger_residual: rest mass must be positive");
    }
    detail::require_mass_shell(state, m0, k, "schrodinger_residual");
    const Scalar mu = detail::mass_wavenumber(m0, k);
    for (const auto& wave : state.components) {
        if (spatial(wave.k).norm() > Scalar(kMaxNonRelativisticRatio) * mu) {
            throw PreconditionError(
                "schrodinger_residual: outside the non-relativistic domain, need |k3| hbar / (m0 c) <= 0.1");
        }
    }
    detail::validate_grid(grid, false);

    // envelope frequency omega - m0 c^2 / hbar = c (|k| - mu), formed without
    // cancellation
    std::vector<Scalar> envelope_omega;
    envelope_omega.reserve(state.components.size());
    for (const auto& wave : state.components) {
        const Scalar kw = std::abs(wave.k[W]);
        const Scalar kw2_minus_mu2 = (kw - mu) * (kw + mu);
        const Scalar numerator = spatial(wave.k).squaredNorm() + kw2_minus_mu2;
        envelope_omega.push_back(k.c * numerator / (wave.k.norm() + mu));
    }
    const auto envelope = [&](const Vector4<Scalar>& x, Scalar t) {
        std::complex<Scalar> sum{0, 0};
        for (std::size_t i = 0; i < state.components.size(); ++i) {
            const auto& wave = state.components[i];
            sum += wave.amplitude * std::polar(Scalar(1), wave.k.dot(x) - envelope_omega[i] * t);
        }
        return sum;
    };

    const Scalar hbar = k.hbar();
    const Scalar kinetic_coefficient = hbar * hbar / (Scalar(2) * m0);
    Scalar worst = 0;
    detail::for_each_interior(grid, false, [&](const Vector4<Scalar>& x, Scalar t) {
        const auto dphi_dt = (envelope(x, t + grid.dt) - envelope(x, t - grid.dt)) / (Scalar(2) * grid.dt);
        std::complex<Scalar> lap{0, 0};
        for (int axis = X; axis <= Z; ++axis) {
            lap += detail::second_difference(envelope, x, t, axis, grid.spacing[axis]);
        }
        const auto r = std::complex<Scalar>(0, hbar) * dphi_dt + kinetic_coefficient * lap;
        worst = std::max(worst, std::abs(r));
    });

    Scalar scale = kinetic_coefficient * detail::curvature_scale(state, true);
    if (scale == Scalar(0)) {
        for (const auto& wave : state.components) {
            scale += std::abs(wave.amplitude) * m0 * k.c * k.c;
        }
    }
    return worst / (scale > 0 ? scale : Scalar(1));
}

template <typename Scalar>
Vector4<Scalar> total_momentum(const WaveState<Scalar>& state,
                               const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    Vector4<Scalar> sum = Vector4<Scalar>::Zero();
    for (const auto& wave : state.components) {
        sum += momentum_of(wave, k);
    }
    return sum;
}

template <typename Scalar>
Scalar total_energy(const WaveState<Scalar>& state,
                    const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    Scalar sum = 0;
    for (const auto& wave : state.components) {
        sum += energy_of(wave, k);
    }
    return sum;
}

/// Two overlapping modes with three-space wave vectors -k3 and +k3 and k_w = 0.
template <typename Scalar>
WaveState<Scalar> composite_state(const Vector3<Scalar>& k3, std::complex<Scalar> amplitude,
                                  const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    require_finite(k3, "composite_state");
    if (k3.squaredNorm() == Scalar(0)) {
        throw PreconditionError("composite_state: degenerate composite, k must be nonzero");
    }
    return {{make_plane_wave(make_vector4(Scalar(0), Vector3<Scalar>(-k3)), amplitude, k),
             make_plane_wave(make_vector4(Scalar(0), k3), amplitude, k)}};
}

/// Total energy over c^2 for a state at rest; throws if its three-momentum is nonzero.
template <typename Scalar>
Scalar composite_rest_mass(const WaveState<Scalar>& state,
                           const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    Vector3<Scalar> sum = Vector3<Scalar>::Zero();
    Scalar magnitude = 0;
    for (const auto& wave : state.components) {
        const Vector3<Scalar> p3 = k.hbar() * spatial(wave.k);
        sum += p3;
        magnitude += p3.norm();
    }
    if (sum.norm() > Scalar(1e-12) * magnitude) {
        throw PreconditionError("composite_rest_mass: state is not in its rest frame");
    }
    return total_energy(state, k) / (k.c * k.c);
}

/// sqrt(E^2 - |P3|^2 c^2) / c^2 from the summed energy and three-momentum.
template <typename Scalar>
Scalar invariant_mass(const WaveState<Scalar>& state,
                      const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    const Scalar energy = total_energy(state, k);
    const Vector3<Scalar> p3 = spatial(total_momentum(state, k));
    const Scalar pc = p3.norm() * k.c;
    const Scalar radicand = (energy - pc) * (energy + pc);
    return std::sqrt(radicand > 0 ? radicand : Scalar(0)) / (k.c * k.c);
}

/// Doppler-boost every mode. Amplitudes are carried over unchanged.
template <typename Scalar>
WaveState<Scalar> boost_composite(const WaveState<Scalar>& state, const Vector3<Scalar>& v3,
                                  const PhysicalConstants<Scalar>& k = PhysicalConstants<Scalar>::codata())
{
    make_boost(v3, k);
    WaveState<Scalar> out;
    out.components.reserve(state.components.size());
    for (const auto& wave : state.components) {
        const auto [k4, omega] = boost_wave_vector(wave.k, wave.omega, v3, k);
        out.components.push_back({k4, omega, wave.amplitude});
    }
    return out;
}

} // namespace euclid4

#endif // EUCLID4_WAVEMECH_HPP
