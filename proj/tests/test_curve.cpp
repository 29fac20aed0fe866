#include <cmath>

#include "doctest.h"
#include "gip/curve.hpp"
#include "gip/geometry.hpp"
#include "test_helpers.hpp"

using namespace gip;

TEST_CASE("curvature_from_gip inverts the 1D potential") {
    PhysicalConstants c;
    const Profile zero = Profile::constant(0.0, 0.0, 5.0);
    CHECK(curvature_from_gip(zero, c).kappa(2.0) == doctest::Approx(0.0));

    const double R = 2.0;
    const Profile vconst = Profile::constant(-1.0 / (8.0 * R * R), 0.0, 5.0);
    CHECK(curvature_from_gip(vconst, c).kappa(1.0) == doctest::Approx(1.0 / R).epsilon(1e-12));

    const Profile bad([](double s) { return s < 2.5 ? -0.1 : 0.1; }, 0.0, 5.0);
    CHECK_THROWS_AS(curvature_from_gip(bad, c), InfeasibleError);
}

TEST_CASE("frenet integration: straight line") {
    CurvatureProfile prof{Profile::constant(0.0, 0.0, 4.0), Profile::constant(0.0, 0.0, 4.0)};
    FrenetFrame f0;
    const ReconstructedCurve c = integrate_frenet(prof, f0, {1.0, 2.0, 3.0}, 0.01);
    const Vec3 expected{1.0 + 4.0, 2.0, 3.0};
    CHECK((c.pos.back() - expected).norm() < 1e-12);
}

TEST_CASE("frenet integration: unit circle closes") {
    CurvatureProfile prof{Profile::constant(1.0, 0.0, 2.0 * M_PI),
                          Profile::constant(0.0, 0.0, 2.0 * M_PI)};
    const ReconstructedCurve c = integrate_frenet(prof, {}, {0, 0, 0}, 2.0 * M_PI / 2000.0);
    CHECK((c.pos.back() - c.pos.front()).norm() < 1e-6);
    // unit speed
    for (std::size_t i = 0; i + 1 < c.pos.size(); i += 100) {
        const double ds = (c.pos[i + 1] - c.pos[i]).norm();
        CHECK(ds == doctest::Approx(c.s[i + 1] - c.s[i]).epsilon(1e-6));
    }
}

TEST_CASE("frenet integration: helix radius kappa/(kappa^2+tau^2)") {
    CurvatureProfile prof{Profile::constant(0.5, 0.0, 20.0), Profile::constant(0.5, 0.0, 20.0)};
    const ReconstructedCurve c = integrate_frenet(prof, {}, {0, 0, 0}, 0.002);
    // axis direction (tau t0 + kappa b0)/|..|, axis passes through
    // alpha0 + n0 * kappa/(kappa^2+tau^2)
    const Vec3 axis = Vec3{0.5, 0.0, 0.5}.normalized();
    const Vec3 center{0.0, 1.0, 0.0};
    for (std::size_t i = 0; i < c.pos.size(); i += 250) {
        const Vec3 d = c.pos[i] - center;
        const double dist = (d - axis * d.dot(axis)).norm();
        CHECK(dist == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("frame stays orthonormal and validation rejects a skewed frame") {
    CurvatureProfile prof{Profile([](double s) { return 1.0 + 0.5 * std::sin(s); }, 0.0, 10.0),
                          Profile([](double s) { return 0.3 * std::cos(s); }, 0.0, 10.0)};
    const ReconstructedCurve c = integrate_frenet(prof, {}, {0, 0, 0}, 0.005);
    double drift = 0.0;
    for (const auto& fr : c.frames) drift = std::max(drift, test::frame_drift(fr));
    CHECK(drift < 1e-9);

    FrenetFrame bad;
    bad.n = {0.1, 1.0, 0.0};
    CHECK_THROWS_AS(integrate_frenet(prof, bad, {0, 0, 0}, 0.005), ValidationError);
}

TEST_CASE("planar closed form: line and circle") {
    const Profile zero = Profile::constant(0.0, 0.0, 3.0);
    PlanarStart start{2.0, -1.0, 0.7};
    const ReconstructedCurve line = planar_closed_form(zero, 601, start);
    const Vec3 expected{2.0 + 3.0 * std::cos(0.7), -1.0 + 3.0 * std::sin(0.7), 0.0};
    CHECK((line.pos.back() - expected).norm() < 1e-10);

    const double R = 1.5;
    const Profile k = Profile::constant(1.0 / R, 0.0, 2.0 * M_PI * R);
    const ReconstructedCurve circle = planar_closed_form(k, 3001);
    CHECK((circle.pos.back() - circle.pos.front()).norm() < 1e-8);
}

TEST_CASE("planar closed form matches frenet integration") {
    SUBCASE("circle") {
        const double R = 2.0;
        const Profile k = Profile::constant(1.0 / R, 0.0, 8.0);
        CurvatureProfile prof{k, Profile::constant(0.0, 0.0, 8.0)};
        const std::size_t n = 4001;
        const ReconstructedCurve a = planar_closed_form(k, n);
        const ReconstructedCurve b = integrate_frenet(prof, {}, {0, 0, 0}, 8.0 / (n - 1));
        for (std::size_t i = 0; i < n; i += 97)
            CHECK((a.pos[i] - b.pos[i]).norm() < 1e-8);
    }
    SUBCASE("clothoid") {
        const Profile k([](double s) { return s; }, 0.0, 3.0);
        CurvatureProfile prof{k, Profile::constant(0.0, 0.0, 3.0)};
        const std::size_t n = 3001;
        const ReconstructedCurve a = planar_closed_form(k, n);
        const ReconstructedCurve b = integrate_frenet(prof, {}, {0, 0, 0}, 3.0 / (n - 1));
        for (std::size_t i = 0; i < n; i += 59)
            CHECK((a.pos[i] - b.pos[i]).norm() < 1e-7);
    }
}

TEST_CASE("reconstruction round trip recovers the input invariants") {
    CurvatureProfile prof{Profile([](double s) { return 1.0 + 0.3 * std::sin(s); }, 0.0, 10.0),
                          Profile::constant(0.5, 0.0, 10.0)};
    const double h = 10.0 / 8000.0;
    const ReconstructedCurve c = integrate_frenet(prof, {}, {0, 0, 0}, h);
    const auto curve = test::sampled_curve(c);
    for (std::size_t i = 400; i + 400 < c.s.size(); i += 617) {
        const CurveInvariants inv = curve_invariants(curve, c.s[i], h);
        CHECK(inv.kappa == doctest::Approx(prof.kappa(c.s[i])).epsilon(1e-4));
        CHECK(inv.tau == doctest::Approx(0.5).epsilon(1e-4));
    }
}

TEST_CASE("rigid-motion covariance of the reconstruction") {
    CurvatureProfile prof{Profile([](double s) { return 0.8 + 0.2 * std::cos(s); }, 0.0, 6.0),
                          Profile::constant(0.25, 0.0, 6.0)};
    const ReconstructedCurve base = integrate_frenet(prof, {}, {0, 0, 0}, 0.005);

    // Rotation about z by phi, then a translation.
    const double phi = 0.83;
    auto rot = [phi](const Vec3& v) {
        return Vec3{v.x * std::cos(phi) - v.y * std::sin(phi),
                    v.x * std::sin(phi) + v.y * std::cos(phi), v.z};
    };
    const Vec3 shift{0.4, -1.2, 2.0};
    FrenetFrame f0;
    f0.t = rot(f0.t);
    f0.n = rot(f0.n);
    f0.b = rot(f0.b);
    const ReconstructedCurve moved = integrate_frenet(prof, f0, shift, 0.005);
    for (std::size_t i = 0; i < base.pos.size(); i += 113)
        CHECK((moved.pos[i] - (rot(base.pos[i]) + shift)).norm() < 1e-9);
}
