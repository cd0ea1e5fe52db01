#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "euclid4/transforms.hpp"
#include "test_support.hpp"

using namespace euclid4;
using euclid4::testing::Gen;
using euclid4::testing::rel_diff;
using Eigen::Matrix4d;
using Eigen::Vector3d;
using Eigen::Vector4d;
using V4 = Vector4<double>;

namespace {

const Constants kc = Constants::codata();
const double c = kc.c;

/// Oracle: textbook passive Lorentz matrix acting on (ct, x, y, z).
Matrix4d lorentz_matrix(const Vector3d& v)
{
    const Vector3d beta = v / c;
    const double b2 = beta.squaredNorm();
    const double g = 1.0 / std::sqrt(1.0 - b2);
    Matrix4d m = Matrix4d::Identity();
    m(0, 0) = g;
    m.block<1, 3>(0, 1) = -g * beta.transpose();
    m.block<3, 1>(1, 0) = -g * beta;
    if (b2 > 0) {
        m.block<3, 3>(1, 1) += (g - 1) * beta * beta.transpose() / b2;
    }
    return m;
}

FourMomentum<double> random_momentum(Gen& gen)
{
    V4 p;
    for (int i = 0; i < 4; ++i) {
        p[i] = gen.uniform(-1e-21, 1e-21);
    }
    return {p};
}

} // namespace

TEST_CASE("gamma")
{
    CHECK(gamma(Vector3d(0, 0, 0)) == 1.0);
    CHECK(rel_diff(gamma(Vector3d(0.6 * c, 0, 0)), 1.25) < 1e-15);
    CHECK(rel_diff(gamma(Vector3d(0, 0, 0.8 * c)), 5.0 / 3.0) < 1e-15);
    CHECK_THROWS_AS(gamma(Vector3d(c, 0, 0)), SuperluminalError);
    CHECK_THROWS_AS(gamma(Vector3d(0, 1.5 * c, 0)), SuperluminalError);
    CHECK_NOTHROW(gamma(Vector3d(kMaxBeta * c, 0, 0)));
    CHECK(gamma(Vector3d(kMaxBeta * c, 0, 0)) > 7e5);
}

TEST_CASE("relativistic_mass")
{
    CHECK(relativistic_mass(kc.m_e, Vector3d(0, 0, 0)) == kc.m_e);
    CHECK(rel_diff(relativistic_mass(2.0, Vector3d(0, 0.6 * c, 0)), 2.5) < 1e-15);
    CHECK(relativistic_mass(0.0, Vector3d(0.9 * c, 0, 0)) == 0.0);
    CHECK_THROWS_AS(relativistic_mass(1.0, Vector3d(c, 0, 0)), SuperluminalError);
}

TEST_CASE("doppler_shift")
{
    const V4 k4(0, 0, 2.5e10, 0);
    const double E = kc.hbar() * c * k4.norm();
    CHECK(doppler_shift(E, k4, Vector3d(0, 0, 0)) == E);
    // transverse: E' = gamma E
    CHECK(rel_diff(doppler_shift(E, k4, Vector3d(0.6 * c, 0, 0)), 1.25 * E) < 1e-15);

    Gen gen(5);
    for (int i = 0; i < 50; ++i) {
        const Vector3d v = 0.6 * c * gen.direction();
        const double sum = doppler_shift(E, k4, v) + doppler_shift(E, V4(-k4), v);
        CHECK(rel_diff(sum, 2 * E / 0.8) < 1e-12);
    }
    CHECK_THROWS_AS(doppler_shift(E, k4, Vector3d(1.1 * c, 0, 0)), SuperluminalError);
    CHECK_THROWS_AS(doppler_shift(2 * E, k4, Vector3d(0, 0, 0)), PreconditionError);
}

TEST_CASE("boost_momentum")
{
    const FourMomentum<double> rest{V4(-kc.m_e * c, 0, 0, 0)};
    const auto same = boost_momentum(rest, Vector3d::Zero().eval());
    CHECK(same.p == rest.p);

    const auto moved = boost_momentum(rest, Vector3d(0.6 * c, 0, 0));
    CHECK(moved.p[W] == -kc.m_e * c);
    CHECK(rel_diff(moved.p[X], -0.75 * kc.m_e * c) < 1e-15);
    CHECK(moved.p[Y] == 0.0);
    CHECK(rel_diff(energy_of(moved), 1.25 * kc.m_e * c * c) < 1e-15);
    CHECK(std::abs(verify_energy_momentum(energy_of(moved), Vector3d(spatial(moved.p)), kc.m_e)) < 1e-10);

    // longitudinal Doppler: sqrt((1 - 0.6) / (1 + 0.6)) = 1/2
    const FourMomentum<double> photon{V4(0, 3e-22, 0, 0)};
    const auto redshifted = boost_momentum(photon, Vector3d(0.6 * c, 0, 0));
    CHECK(rel_diff(energy_of(redshifted), energy_of(photon) / 2) < 1e-15);

    CHECK_THROWS_AS(boost_momentum(rest, Vector3d(0, 0, -c)), SuperluminalError);
}

TEST_CASE("boost_momentum agrees with the Lorentz matrix and keeps w")
{
    Gen gen(6);
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_momentum(gen);
        const Vector3d v = gen.velocity(c, 0.99);
        const auto boosted = boost_momentum(p, v);
        CHECK(boosted.p[W] == p.p[W]);

        const Vector4d minkowski(energy_of(p) / c, p.p[X], p.p[Y], p.p[Z]);
        const Vector4d expected = lorentz_matrix(v) * minkowski;
        const double scale = minkowski.cwiseAbs().maxCoeff() * gamma(v);
        CHECK((spatial(boosted.p) - expected.tail<3>()).cwiseAbs().maxCoeff() < 1e-12 * scale);
        CHECK(std::abs(energy_of(boosted) / c - expected[0]) < 1e-12 * scale);
    }
}

TEST_CASE("collinear boosts compose by relativistic velocity addition")
{
    Gen gen(7);
    for (int i = 0; i < 200; ++i) {
        const Vector3d n = gen.direction();
        const double b1 = gen.uniform(-0.9, 0.9);
        const double b2 = gen.uniform(-0.9, 0.9);
        const double b12 = (b1 + b2) / (1 + b1 * b2);
        const auto p = random_momentum(gen);
        const auto twice = boost_momentum(boost_momentum(p, Vector3d(b1 * c * n)), Vector3d(b2 * c * n));
        const auto once = boost_momentum(p, Vector3d(b12 * c * n));
        const double scale = once.p.norm();
        CHECK((twice.p - once.p).norm() < 1e-10 * scale);
    }
}

TEST_CASE("spacetime_interval")
{
    CHECK(spacetime_interval(1.0, 0.0, 0.0, 0.0) == c);
    CHECK(spacetime_interval(1.0, c, 0.0, 0.0) == 0.0);
    CHECK(rel_diff(spacetime_interval(1.0, 0.6 * c, 0.0, 0.0), 0.8 * c) < 1e-15);
    CHECK_THROWS_AS(spacetime_interval(1.0, 2 * c, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(spacetime_interval(0.0, 1.0, 0.0, 0.0), DomainError);
}

TEST_CASE("boost_event")
{
    const Event4<double> ev{1.0, V4(0.8 * c, 0, 0, 0)};
    const auto id = boost_event(ev, Vector3d::Zero().eval());
    CHECK(id.t == ev.t);
    CHECK(id.position == ev.position);

    const auto b = boost_event(ev, Vector3d(0.6 * c, 0, 0));
    CHECK(rel_diff(b.t, 1.25) < 1e-15);
    CHECK(rel_diff(b.position[X], -0.75 * c) < 1e-15);
    CHECK(b.position[W] == 0.8 * c);

    Gen gen(8);
    for (int i = 0; i < 500; ++i) {
        const double t = gen.uniform(0.1, 2.0);
        // random point on w^2 + x^2 + y^2 + z^2 = c^2 t^2
        V4 dir;
        for (int a = 0; a < 4; ++a) {
            dir[a] = gen.uniform(-1, 1);
        }
        const Event4<double> flash{t, V4(c * t * dir.normalized())};
        const auto seen = boost_event(flash, gen.velocity(c, 0.95));
        const double lhs = seen.position.squaredNorm();
        const double rhs = c * c * seen.t * seen.t;
        CHECK(rel_diff(lhs, rhs) < 1e-10);

        const Vector3d v = gen.velocity(c, 0.9);
        const Vector4d expected =
            lorentz_matrix(v) * Vector4d(c * flash.t, flash.position[X], flash.position[Y], flash.position[Z]);
        const auto got = boost_event(flash, v);
        CHECK(std::abs(c * got.t - expected[0]) < 1e-9 * c * t * 10);
        CHECK((spatial(got.position) - expected.tail<3>()).norm() < 1e-9 * c * t * 10);
    }
}

TEST_CASE("intervals are boost invariant")
{
    Gen gen(9);
    for (int i = 0; i < 500; ++i) {
        const Event4<double> a{gen.uniform(-1, 1), V4(0, gen.uniform(-1e8, 1e8), gen.uniform(-1e8, 1e8), 0)};
        const double dt = gen.uniform(0.5, 2.0);
        const Vector3d dr = gen.uniform(0, 0.7) * c * dt * gen.direction();
        const Event4<double> b{a.t + dt, V4(a.position + make_vector4(0.0, dr))};
        const Vector3d v = gen.velocity(c, 0.9);
        const double before = spacetime_interval(a, b);
        const double after = spacetime_interval(boost_event(a, v), boost_event(b, v));
        CHECK(rel_diff(before, after) < 1e-10);
    }
}

TEST_CASE("verify_energy_momentum")
{
    const double m0 = kc.m_e;
    CHECK(verify_energy_momentum(m0 * c * c, Vector3d::Zero().eval(), m0) == 0.0);
    const Vector3d p3(1e-22, 0, 0);
    CHECK(std::abs(verify_energy_momentum(p3.norm() * c, p3, 0.0)) < 1e-15);
    CHECK(verify_energy_momentum(0.0, Vector3d::Zero().eval(), 0.0) == 0.0);
    CHECK(verify_energy_momentum(2 * m0 * c * c, Vector3d::Zero().eval(), m0) == doctest::Approx(0.75));
}
