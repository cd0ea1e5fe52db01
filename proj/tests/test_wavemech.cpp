#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "euclid4/wave_io.hpp"
#include "euclid4/wavemech.hpp"
#include "test_support.hpp"

using namespace euclid4;
using euclid4::testing::Gen;
using euclid4::testing::rel_diff;
using Eigen::Vector3d;
using V4 = Vector4<double>;
using cd = std::complex<double>;

namespace {

const Constants kc = Constants::codata();
const double c = kc.c;
const double hbar = kc.hbar();

WaveState<double> single(const V4& k4, cd amplitude = {1.0, 0.0})
{
    return {{make_plane_wave(k4, amplitude)}};
}

V4 random_k(Gen& gen, double lo, double hi)
{
    const double magnitude = gen.uniform(lo, hi);
    V4 dir;
    for (int a = 0; a < 4; ++a) {
        dir[a] = gen.uniform(-1, 1);
    }
    return magnitude * dir.normalized();
}

/// c dt = h/4 so the time and space truncation terms cannot cancel.
GridSpec<double> grid_for(double h, V4 origin = V4::Zero())
{
    return GridSpec<double>::uniform(h, h / (4 * c), 5, origin);
}

double max_k(const WaveState<double>& s)
{
    double m = 0;
    for (const auto& w : s.components) {
        m = std::max(m, w.k.norm());
    }
    return m;
}

} // namespace

TEST_CASE("make_plane_wave")
{
    const auto still = make_plane_wave(V4::Zero().eval(), cd(2, 0));
    CHECK(still.omega == 0.0);
    CHECK(evaluate(WaveState<double>{{still}}, V4(1, 2, 3, 4), 5.0) == cd(2, 0));

    const double mu = kc.m_e * c / hbar;
    const auto electron = make_plane_wave(V4(mu, 0, 0, 0), cd(1, 0));
    CHECK(rel_diff(electron.omega, kc.m_e * c * c / hbar) < 1e-15);
    CHECK(rel_diff(energy_of(electron), kc.m_e * c * c) < 1e-15);
    CHECK(rel_diff(momentum_of(electron)[W], kc.m_e * c) < 1e-15);

    Gen gen(21);
    for (int i = 0; i < 20; ++i) {
        const V4 dir = random_k(gen, 1.0, 1.0);
        CHECK(rel_diff(make_plane_wave(dir, cd(1, 0)).omega, 2.99792458e8) < 1e-15);
        CHECK(satisfies_dispersion(make_plane_wave(random_k(gen, 1e-3, 1e12), cd(1, 0))));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_plane_wave(V4(nan, 0, 0, 0), cd(1, 0)), InvalidInput);
    CHECK_THROWS_AS(make_plane_wave(V4(1, 0, 0, 0), cd(nan, 0)), InvalidInput);
}

TEST_CASE("evaluate")
{
    const cd amplitude(0.3, -1.2);
    const V4 k4(0.5, -1.0, 2.0, 0.25);
    CHECK(evaluate(single(k4, amplitude), V4::Zero().eval(), 0.0) == amplitude);

    // one wavelength along k-hat
    const V4 x(0.1, 0.2, -0.3, 0.4);
    const V4 shifted = x + (2 * std::numbers::pi / k4.norm()) * k4.normalized();
    CHECK(std::abs(evaluate(single(k4, amplitude), shifted, 0.0) - evaluate(single(k4, amplitude), x, 0.0)) <
          1e-12);

    // +-k at t = 0 -> 2 A cos(k.x)
    const WaveState<double> pair{{make_plane_wave(k4, amplitude), make_plane_wave(V4(-k4), amplitude)}};
    Gen gen(22);
    for (int i = 0; i < 50; ++i) {
        const V4 p = V4::NullaryExpr([&] { return gen.uniform(-3, 3); });
        CHECK(std::abs(evaluate(pair, p, 0.0) - 2.0 * amplitude * std::cos(k4.dot(p))) < 1e-12);
    }
}

TEST_CASE("evaluate and residuals are linear in the amplitudes")
{
    Gen gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        WaveState<double> a, b, both;
        for (int i = 0; i < 4; ++i) {
            const auto wave = make_plane_wave(random_k(gen, 0.5, 2.0), cd(gen.uniform(-1, 1), gen.uniform(-1, 1)));
            (i % 2 ? a : b).components.push_back(wave);
            both.components.push_back(wave);
        }
        const V4 x = V4::NullaryExpr([&] { return gen.uniform(-2, 2); });
        const double t = gen.uniform(-1e-8, 1e-8);
        CHECK(std::abs(evaluate(both, x, t) - evaluate(a, x, t) - evaluate(b, x, t)) < 1e-12);
        CHECK(std::abs(apply_momentum_operator(both, X, x, t, 1e-3) - apply_momentum_operator(a, X, x, t, 1e-3) -
                       apply_momentum_operator(b, X, x, t, 1e-3)) < 1e-12 * hbar * 10);

        // detuned so the residual is O(1) and not rounding noise
        both.components[0].omega *= 0.7;
        auto scaled = both;
        for (auto& w : scaled.components) {
            w.amplitude *= 3.0;
        }
        const auto grid = grid_for(1e-2 / max_k(both));
        CHECK(rel_diff(wave_equation_residual(scaled, grid), wave_equation_residual(both, grid)) < 1e-9);
    }
}

TEST_CASE("momentum operator")
{
    const V4 k4(0.3, 0.8, -0.5, 0.1);
    const auto state = single(k4, cd(0.7, 0.2));
    const V4 x(0.01, -0.02, 0.03, 0.0);
    const double t = 1e-9;
    for (int axis = W; axis <= Z; ++axis) {
        const double kj = k4[axis];
        const double h = 1e-2;
        const cd estimate = apply_momentum_operator(state, static_cast<Axis>(axis), x, t, h) / evaluate(state, x, t);
        // oracle: central difference of exp(i k x) is i sin(k h)/h exactly
        const double exact_fd = hbar * std::sin(kj * h) / h;
        CHECK(std::abs(estimate.real() - exact_fd) < 1e-12 * hbar);
        CHECK(std::abs(estimate.imag()) < 1e-12 * hbar);
        CHECK(std::abs(estimate.real() - hbar * kj) <= 1.01 * hbar * std::abs(kj) * (kj * h) * (kj * h) / 6 + 1e-12 * hbar);
    }

    const auto flat = single(V4(0, 1.5, 0, 0));
    CHECK(apply_momentum_operator(flat, Y, x, t, 1e-3) == cd(0, 0));
    CHECK_THROWS_AS(apply_momentum_operator(flat, X, x, t, 0.0), InvalidInput);
    CHECK_THROWS_AS(apply_momentum_operator(flat, X, x, t, -1e-3), InvalidInput);
}

TEST_CASE("operator estimates converge at second order")
{
    Gen gen(24);
    for (int trial = 0; trial < 10; ++trial) {
        const V4 k4 = random_k(gen, 0.5, 2.0);
        const auto state = single(k4);
        const V4 x = V4::NullaryExpr([&] { return gen.uniform(-1, 1); });
        const double t = gen.uniform(-1e-8, 1e-8);
        const double omega = c * k4.norm();
        const auto momentum_error = [&](int axis, double h) {
            const cd est = apply_momentum_operator(state, static_cast<Axis>(axis), x, t, h) / evaluate(state, x, t);
            return std::abs(est - cd(hbar * k4[axis], 0));
        };
        const auto energy_error = [&](double dt) {
            const cd est = apply_energy_operator(state, x, t, dt) / evaluate(state, x, t);
            return std::abs(est - cd(hbar * omega, 0));
        };
        for (int axis = W; axis <= Z; ++axis) {
            const double h = 0.1 / k4.norm();
            const double order = measured_order(momentum_error(axis, h), momentum_error(axis, h / 2));
            CHECK(order > 1.9);
            CHECK(order < 2.1);
        }
        const double dt = 0.1 / omega;
        const double e_order = measured_order(energy_error(dt), energy_error(dt / 2));
        CHECK(e_order > 1.9);
        CHECK(e_order < 2.1);
        CHECK(energy_error(1e-3 / omega) <= 1.01 * hbar * omega * 1e-6 / 6 + 1e-12 * hbar * omega);

        // E^2 = c^2 P^2 closure; c dt = h / 2 keeps the leading terms from cancelling
        const auto closure = [&](double h) { return operator_closure_residual(state, x, t, h, h / (2 * c)); };
        const double h = 0.1 / k4.norm();
        CHECK(closure(1e-4 / k4.norm()) < 1e-8);
        const double c_order = measured_order(closure(h), closure(h / 2));
        CHECK(c_order > 1.9);
        CHECK(c_order < 2.1);
    }

    const auto still = single(V4::Zero().eval());
    CHECK(apply_energy_operator(still, V4::Zero().eval(), 0.0, 1e-9) == cd(0, 0));
    CHECK_THROWS_AS(apply_energy_operator(still, V4::Zero().eval(), 0.0, 0.0), InvalidInput);
}

TEST_CASE("wave_equation_residual")
{
    Gen gen(25);
    for (int trial = 0; trial < 10; ++trial) {
        const V4 k4 = random_k(gen, 0.5, 5.0);
        const auto state = single(k4, cd(gen.uniform(0.5, 2), gen.uniform(-1, 1)));
        const V4 origin = V4::NullaryExpr([&] { return gen.uniform(-1, 1); });
        CHECK(wave_equation_residual(state, grid_for(1e-3 / k4.norm(), origin)) < 1e-6);

        const double h = 0.08 / k4.norm();
        const double order =
            measured_order(wave_equation_residual(state, grid_for(h)), wave_equation_residual(state, grid_for(h / 2)));
        CHECK(order > 1.9);
        CHECK(order < 2.1);

        // omega = 0.5 c |k| leaves (1 - 0.25) |k|^2 Psi
        auto detuned = state;
        detuned.components[0].omega = 0.5 * c * k4.norm();
        CHECK(!satisfies_dispersion(detuned.components[0]));
        CHECK(wave_equation_residual(detuned, grid_for(1e-3 / k4.norm())) == doctest::Approx(0.75).epsilon(1e-5));
    }

    WaveState<double> many;
    for (int i = 0; i < 10; ++i) {
        many.components.push_back(make_plane_wave(random_k(gen, 0.2, 3.0), cd(gen.uniform(-1, 1), gen.uniform(-1, 1))));
    }
    CHECK(wave_equation_residual(many, grid_for(1e-3 / max_k(many))) < 1e-6);

    CHECK_THROWS_AS(wave_equation_residual(many, GridSpec<double>::uniform(1e-3, 1e-12, 4)), PreconditionError);
    CHECK_THROWS_AS(wave_equation_residual(many, GridSpec<double>::uniform(0.0, 1e-12, 5)), PreconditionError);
    CHECK_THROWS_AS(wave_equation_residual(many, GridSpec<double>::uniform(1e-3, 0.0, 5)), PreconditionError);
    CHECK_THROWS_AS(wave_equation_residual(many, GridSpec<double>::uniform(1e-3, 1e-12, 10)), PreconditionError);
}

TEST_CASE("klein_gordon_residual")
{
    const double m0 = kc.m_e;
    const double mu = m0 * c / hbar;

    const auto rest = single(V4(mu, 0, 0, 0));
    CHECK(klein_gordon_residual(rest, m0, grid_for(1e-3 / mu)) < 1e-10);
    const auto rest_negative = single(V4(-mu, 0, 0, 0));
    CHECK(klein_gordon_residual(rest_negative, m0, grid_for(1e-3 / mu)) < 1e-10);

    Gen gen(26);
    for (int trial = 0; trial < 10; ++trial) {
        const Vector3d k3 = mu * gen.direction();
        const double sign = trial % 2 ? 1.0 : -1.0;
        const auto moving = single(make_vector4(sign * mu, k3));
        CHECK(klein_gordon_residual(moving, m0, grid_for(1e-3 / k3.norm())) < 1e-6);
    }

    WaveState<double> mixed{{make_plane_wave(V4(mu, 0, 0, 0), cd(1, 0)), make_plane_wave(V4(2 * mu, 0, 0, 0), cd(1, 0))}};
    CHECK_THROWS_AS(klein_gordon_residual(mixed, m0, grid_for(1e-3 / mu)), PreconditionError);
    CHECK_THROWS_AS(klein_gordon_residual(rest, -m0, grid_for(1e-3 / mu)), PreconditionError);

    // massless limit agrees with the plain wave equation on three-space modes
    const auto photon = single(V4(0, 0.6, 0.8, 0));
    const auto grid = grid_for(1e-3);
    CHECK(klein_gordon_residual(photon, 0.0, grid) < 1e-6);
    CHECK(wave_equation_residual(photon, grid) < 1e-6);
    auto detuned = photon;
    detuned.components[0].omega *= 0.5;
    CHECK(klein_gordon_residual(detuned, 0.0, grid) == doctest::Approx(0.75).epsilon(1e-5));
}

TEST_CASE("schrodinger_residual")
{
    const double m0 = kc.m_e;
    const double mu = m0 * c / hbar;
    const Vector3d dir = Vector3d(1, 2, -2).normalized();

    const auto residual_at = [&](double ratio) {
        const Vector3d k3 = ratio * mu * dir;
        const auto state = single(make_vector4(mu, k3));
        const double envelope = c * mu * (std::sqrt(1 + ratio * ratio) - 1);
        auto grid = GridSpec<double>::uniform(1e-3 / k3.norm(), 1e-3 / envelope);
        return schrodinger_residual(state, m0, grid);
    };

    CHECK(schrodinger_residual(single(V4(mu, 0, 0, 0)), m0, grid_for(1e-3 / mu)) < 1e-10);
    CHECK(residual_at(0.1) <= 1e-2);
    // oracle: |sqrt(1+x^2) - 1 - x^2/2| / (x^2/2) from the dispersion expansion
    for (double x : {0.0125, 0.025, 0.05, 0.1}) {
        const double oracle = std::abs(std::sqrt(1 + x * x) - 1 - x * x / 2) / (x * x / 2);
        CHECK(residual_at(x) == doctest::Approx(oracle).epsilon(1e-3));
    }
    CHECK(residual_at(0.1) / residual_at(0.05) == doctest::Approx(4.0).epsilon(0.02));

    const std::array<double, 4> ratios{0.0125, 0.025, 0.05, 0.1};
    std::array<double, 4> lx{}, ly{};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        lx[i] = std::log(ratios[i]);
        ly[i] = std::log(residual_at(ratios[i]));
        if (i > 0) {
            CHECK(ly[i] > ly[i - 1]);
        }
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / 4;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / 4;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    CHECK(num / den == doctest::Approx(2.0).epsilon(0.1));

    const auto fast = single(make_vector4(mu, Vector3d(0.2 * mu * dir)));
    CHECK_THROWS_AS(schrodinger_residual(fast, m0, grid_for(1e-3 / mu)), PreconditionError);
    CHECK_THROWS_AS(schrodinger_residual(single(V4(mu, 0, 0, 0)), 0.0, grid_for(1e-3 / mu)), PreconditionError);
}

TEST_CASE("composite states")
{
    const Vector3d k3(3e11, -1e11, 2e11);
    const auto pair = composite_state(k3, cd(1, 0));
    REQUIRE(pair.components.size() == 2);
    CHECK(pair.components[0].omega == pair.components[1].omega);
    CHECK(total_momentum(pair).isZero());
    CHECK(rel_diff(total_energy(pair), 2 * hbar * c * k3.norm()) < 1e-15);
    CHECK(rel_diff(composite_rest_mass(pair), 2 * hbar * k3.norm() / c) < 1e-15);

    const Vector3d k3b(-5e10, 4e11, 1e10);
    auto four = pair;
    for (const auto& w : composite_state(k3b, cd(0.5, 0.5)).components) {
        four.components.push_back(w);
    }
    CHECK(rel_diff(composite_rest_mass(four), composite_rest_mass(pair) + composite_rest_mass(composite_state(k3b, cd(1, 0)))) <
          1e-15);

    const double mu = kc.m_e * c / hbar;
    CHECK(rel_diff(composite_rest_mass(single(V4(mu, 0, 0, 0))), kc.m_e) < 1e-15);

    CHECK_THROWS_AS(composite_state(Vector3d::Zero().eval(), cd(1, 0)), PreconditionError);
    CHECK_THROWS_AS(composite_rest_mass(single(V4(0, 1, 0, 0))), PreconditionError);
}

TEST_CASE("boost_composite")
{
    const Vector3d k3(3e11, -1e11, 2e11);
    const auto pair = composite_state(k3, cd(1, 0));
    const auto same = boost_composite(pair, Vector3d::Zero().eval());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(same.components[i].k == pair.components[i].k);
        CHECK(same.components[i].omega == pair.components[i].omega);
    }

    const double m0 = composite_rest_mass(pair);
    const double E = total_energy(pair);
    Gen gen(27);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 100; ++i) {
        const Vector3d v = 0.6 * c * gen.direction();
        const auto boosted = boost_composite(pair, v);
        const double ratio = total_energy(boosted) / E;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        CHECK(std::abs(ratio - 1.25) < 1e-10);
        const Vector3d p3 = spatial(total_momentum(boosted));
        CHECK(std::abs(verify_energy_momentum(total_energy(boosted), p3, m0)) < 1e-10);
        CHECK(rel_diff(invariant_mass(boosted), m0) < 1e-10);
        // relativistic mass from the closed form equals summed Doppler energies
        double doppler = 0;
        for (const auto& w : pair.components) {
            doppler += doppler_shift(energy_of(w), w.k, v);
        }
        CHECK(rel_diff(relativistic_mass(m0, v) * c * c, doppler) < 1e-12);
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(boosted.components[j].k[W] == pair.components[j].k[W]);
            CHECK(boosted.components[j].amplitude == pair.components[j].amplitude);
            CHECK(satisfies_dispersion(boosted.components[j], 1e-12));
        }
    }
    CHECK((hi - lo) / 1.25 < 1e-10);

    for (double beta : {0.1, 0.5, 0.9, 0.99}) {
        const auto boosted = boost_composite(pair, Vector3d(0, beta * c, 0));
        const double factor = (total_energy(boosted) / (c * c)) / m0;
        CHECK(rel_diff(factor, 1 / std::sqrt(1 - beta * beta)) < 1e-10);
    }
    CHECK_THROWS_AS(boost_composite(pair, Vector3d(c, 0, 0)), SuperluminalError);
}

TEST_CASE("phase is frame independent")
{
    // k'.x' - omega' t' equals k.x - omega t for the co-transformed event
    Gen gen(28);
    for (int i = 0; i < 100; ++i) {
        const auto wave = make_plane_wave(random_k(gen, 1.0, 10.0), cd(1, 0));
        const Vector3d v = gen.velocity(c, 0.9);
        const auto [k_new, omega_new] = boost_wave_vector(wave.k, wave.omega, v);
        const Event4<double> ev{gen.uniform(-1e-8, 1e-8), V4::NullaryExpr([&] { return gen.uniform(-1, 1); })};
        const auto seen = boost_event(ev, v);
        const double before = wave.k.dot(ev.position) - wave.omega * ev.t;
        const double after = k_new.dot(seen.position) - omega_new * seen.t;
        CHECK(std::abs(before - after) < 1e-9 * (1 + std::abs(before)) * 100);
    }
}

TEST_CASE("wave state documents")
{
    Gen gen(29);
    WaveState<double> state;
    for (int i = 0; i < 6; ++i) {
        state.components.push_back(make_plane_wave(random_k(gen, 0.1, 10.0), cd(gen.uniform(-1, 1), gen.uniform(-1, 1))));
    }
    state.components[2].omega *= 0.5;
    const auto back = parse_wave_state(wave_state_to_json(state).dump());
    REQUIRE(back.components.size() == state.components.size());
    for (std::size_t i = 0; i < state.components.size(); ++i) {
        CHECK(back.components[i].k == state.components[i].k);
        CHECK(back.components[i].omega == state.components[i].omega);
        CHECK(back.components[i].amplitude == state.components[i].amplitude);
    }
    CHECK_THROWS_AS(parse_wave_state(R"([{"k_w":0,"k_x":1,"k_y":0,"k_z":0,"amplitude_re":1}])"), InvalidInput);
    CHECK_THROWS_AS(parse_wave_state(R"([{"k_w":0,"k_x":1,"k_y":0,"k_z":0,"amplitude_re":1,"amplitude_im":0,"phase":2}])"),
                    InvalidInput);
    CHECK_THROWS_AS(parse_wave_state(R"({"k_w":0})"), InvalidInput);
    CHECK_THROWS_AS(parse_wave_state("[{"), InvalidInput);
}
