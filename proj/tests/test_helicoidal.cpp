#include <cmath>

#include "doctest.h"
#include "gip/geometry.hpp"
#include "gip/helicoidal.hpp"
#include "gip/numerics.hpp"

using namespace gip;

namespace {

BourFamily helicoid_family(double omega = 1.0) {
    return minimal_profile({omega, 1.0, 0.0});
}

// numeric first fundamental form of the natural-parameter embedding
FundamentalForms metric_at(const HelicoidalSurface& s, double xi, double chi) {
    const ParamSurface p = s.patch(chi - 0.5, chi + 0.5);
    return fundamental_forms(p, xi, chi, 1e-4);
}

}  // namespace

TEST_CASE("natural parameters: helicoid is the identity map") {
    const Profile lam = Profile::constant(0.0, 0.3, 2.3);
    const auto grid = num::linspace(0.4, 2.2, 401);
    const NaturalParameters np = natural_parameters(lam, 1.7, grid);
    for (std::size_t i = 0; i < grid.size(); i += 50) {
        CHECK(np.xi[i] == doctest::Approx(grid[i] - grid.front()).epsilon(1e-12));
        CHECK(np.chi_correction[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("natural parameters: slope bounds and large-omega limit") {
    const double c = 0.4;
    const Profile lam([c](double r) { return c * r; }, 0.3, 2.3);
    const auto grid = num::linspace(0.4, 2.2, 901);
    const double h = grid[1] - grid[0];

    const NaturalParameters small = natural_parameters(lam, 1.0, grid);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = small.xi[i] - small.xi[i - 1];
        CHECK(step >= h * (1.0 - 1e-12));  // d xi / d rho >= 1
    }

    const NaturalParameters big = natural_parameters(lam, 1e4, grid);
    const double slope = (big.xi[500] - big.xi[499]) / h;
    CHECK(slope == doctest::Approx(std::sqrt(1.0 + c * c)).epsilon(1e-6));
}

TEST_CASE("natural parameters: differentials reproduce the invariant metric") {
    // with d xi = A d rho and d chi = d phi + B d rho, the line element
    // d xi^2 + U^2 d chi^2 must match (1+l'^2) d rho^2 + 2 l' d rho d phi
    // + (1+w^2 rho^2) d phi^2, i.e. A^2 + U^2 B^2 = 1 + l'^2 and U^2 B = l'.
    const double c = 0.7, w = 1.4;
    const Profile lam([c](double r) { return c * r * r; }, 0.3, 2.3);
    const auto grid = num::linspace(0.4, 2.2, 2001);
    const double h = grid[1] - grid[0];
    const NaturalParameters np = natural_parameters(lam, w, grid);

    const auto xi_d = num::deriv1_samples(np.xi, h);
    const auto chi_d = num::deriv1_samples(np.chi_correction, h);
    for (std::size_t i = 10; i < grid.size(); i += 200) {
        const double r = grid[i];
        const double lp = 2.0 * c * r;
        const double U2 = 1.0 + w * w * r * r;
        CHECK(U2 * chi_d[i] == doctest::Approx(lp).epsilon(1e-8));
        CHECK(xi_d[i] * xi_d[i] + U2 * chi_d[i] * chi_d[i] ==
              doctest::Approx(1.0 + lp * lp).epsilon(1e-8));
    }
}

TEST_CASE("bour synthesis: helicoid profile reproduces the helicoid") {
    const double w = 1.3;
    BourFamily fam = helicoid_family(w);
    const auto grid = num::linspace(0.1, 2.1, 601);
    const HelicoidalSurface s = bour_surface(fam, grid);
    for (double xi : {0.2, 1.0, 2.0}) {
        CHECK(s.rho(xi) == doctest::Approx(xi).epsilon(1e-12));
        CHECK(s.lambda(xi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    // embedding: (xi cos(w chi), xi sin(w chi), chi)
    const Vec3 p = s.position(1.5, 0.7);
    CHECK(p.x == doctest::Approx(1.5 * std::cos(w * 0.7)).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(1.5 * std::sin(w * 0.7)).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("bour synthesis: constant profile lives on a cylinder") {
    BourFamily fam;
    const double U0 = 1.4, a = 1.1, w = 0.9;
    fam.U = [U0](double) { return U0; };
    fam.dU = [](double) { return 0.0; };
    fam.ddU = [](double) { return 0.0; };
    fam.omega = w;
    fam.a = a;
    const auto grid = num::linspace(-1.0, 1.0, 501);
    const HelicoidalSurface s = bour_surface(fam, grid);
    const double R = std::sqrt(a * a * U0 * U0 - 1.0) / std::abs(w);
    for (double xi : {-0.8, 0.0, 0.9})
        CHECK(s.rho(xi) == doctest::Approx(R).epsilon(1e-12));
}

TEST_CASE("bour synthesis: infeasible radicand names the constraint") {
    BourFamily fam;
    fam.U = [](double xi) { return 1.0 + 2.0 * xi * xi; };  // steep profile
    fam.omega = 0.5;                                        // omega^2 too small
    fam.a = 1.0;
    const auto grid = num::linspace(0.5, 2.0, 301);
    CHECK_THROWS_AS(bour_surface(fam, grid), InfeasibleError);
}

TEST_CASE("helicoidal curvature formulas") {
    SUBCASE("helicoid values at the axis") {
        const HelicoidalCurvatures c = helicoidal_curvatures(helicoid_family(1.0), 0.0);
        CHECK(c.pair.K == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(c.pair.H == 0.0);
        CHECK(c.h_singular);  // minimal member: 0/0 resolved to zero
    }
    SUBCASE("minimal member has exactly vanishing H without singularity") {
        const BourFamily fam = minimal_profile({1.0, 3.0, 0.0});
        const HelicoidalCurvatures c = helicoidal_curvatures(fam, 0.8);
        CHECK(c.pair.H == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        CHECK_FALSE(c.h_singular);
    }
    SUBCASE("formula K matches the numeric embedding") {
        BourFamily fam;
        fam.U = [](double xi) { return std::sqrt(2.0 + xi * xi); };
        fam.omega = 2.0;
        fam.a = 1.0;
        const auto grid = num::linspace(-2.0, 2.0, 4097);
        const HelicoidalSurface s = bour_surface(fam, grid);
        const ParamSurface patch = s.patch(0.0, 2.0);
        for (double xi : {-1.2, 0.3, 1.5}) {
            const CurvaturePair num_pair = numeric_curvatures(patch, xi, 1.0, 2e-3);
            const CurvaturePair formula = helicoidal_curvatures(fam, xi).pair;
            CHECK(num_pair.K == doctest::Approx(formula.K).epsilon(1e-5));
        }
    }
}

TEST_CASE("minimal family validation and profile") {
    CHECK_THROWS_AS(minimal_profile({1.0, 0.5, 0.0}), ValidationError);  // b = 0.5
    CHECK_NOTHROW(minimal_profile({1.0, 2.0, 1.0}));                     // b = 1 boundary

    const BourFamily hel = minimal_profile({1.0, 1.0, 0.0});
    for (double xi : {0.0, 0.7, -1.3})
        CHECK(hel.U(xi) == doctest::Approx(std::sqrt(1.0 + xi * xi)).epsilon(1e-14));
}

TEST_CASE("minimal-surface gaussian curvature") {
    CHECK(minimal_gaussian({1.0, 1.0, 0.0}, 0.0) == doctest::Approx(-1.0));

    const MinimalFamily fam{2.0, 5.0, 1.0};
    for (double xi : {-3.0, -0.5, 0.0, 1.0, 4.0}) CHECK(minimal_gaussian(fam, xi) < 0.0);

    // decays like xi^-4
    const double k1 = minimal_gaussian(fam, 50.0);
    const double k2 = minimal_gaussian(fam, 100.0);
    CHECK(k1 / k2 == doctest::Approx(16.0).epsilon(0.05));

    // closed form equals -U''/U on the quadratic profile
    const BourFamily prof = minimal_profile(fam);
    for (double xi : {-1.0, 0.2, 2.5}) {
        const double kf = -prof.ddU(xi) / prof.U(xi);
        CHECK(minimal_gaussian(fam, xi) == doctest::Approx(kf).epsilon(1e-10));
    }
}

TEST_CASE("minimal embeddings: helicoid degenerates, others verify by metric") {
    SUBCASE("b = 1 keeps the height constant") {
        const auto grid = num::linspace(0.2, 2.0, 301);
        const HelicoidalSurface s = minimal_surface_embedding({1.0, 1.0, 0.0}, grid);
        CHECK(s.lambda(0.5) == s.lambda(1.9));
        CHECK(s.phi(1.0, 0.3) == doctest::Approx(0.3));
    }
    SUBCASE("omega0 = 3 member has the natural metric") {
        const auto grid = num::linspace(-2.0, 2.0, 4097);
        const HelicoidalSurface s = minimal_surface_embedding({1.0, 3.0, 0.0}, grid);
        for (double xi : {-1.5, 0.0, 1.2}) {
            const FundamentalForms f = metric_at(s, xi, 1.0);
            const double U2 = 3.0 + xi * xi;
            CHECK(f.g11 == doctest::Approx(1.0).epsilon(1e-6));
            CHECK(f.g12 == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
            CHECK(f.g22 == doctest::Approx(U2).epsilon(1e-6));
        }
    }
    SUBCASE("numeric H vanishes on minimal members") {
        const auto grid = num::linspace(-2.0, 2.0, 8193);
        for (MinimalFamily fam : {MinimalFamily{1.0, 3.0, 0.0}, MinimalFamily{2.0, 5.0, 1.0}}) {
            const HelicoidalSurface s = minimal_surface_embedding(fam, grid);
            const ParamSurface patch = s.patch(0.0, 2.0);
            for (double xi : {-1.4, 0.1, 1.7}) {
                const CurvaturePair p = numeric_curvatures(patch, xi, 1.0, 1e-3);
                CHECK(std::abs(p.H) < 1e-6);
            }
        }
    }
    SUBCASE("a rescaling chi -> a chi leaves the image invariant") {
        const auto grid = num::linspace(0.3, 2.0, 2049);
        const double w = 1.0, w0 = 3.0;
        BourFamily f1 = minimal_profile({w, w0, 0.0});
        BourFamily f2 = f1;
        f2.a = 1.3;
        f2.U = [w, w0, a = 1.3](double xi) { return std::sqrt(w * w * xi * xi + w0) / a; };
        f2.dU = [w, w0, a = 1.3](double xi) {
            return w * w * xi / (a * std::sqrt(w * w * xi * xi + w0));
        };
        f2.ddU = [w, w0, a = 1.3](double xi) {
            const double P = w * w * xi * xi + w0;
            return (w * w / std::sqrt(P) - w * w * xi * w * w * xi / std::pow(P, 1.5)) / a;
        };
        const HelicoidalSurface s1 = bour_surface(f1, grid);
        const HelicoidalSurface s2 = bour_surface(f2, grid);
        for (double xi : {0.5, 1.1, 1.9}) {
            for (double chi : {0.0, 0.4}) {
                const Vec3 p1 = s1.position(xi, chi);
                const Vec3 p2 = s2.position(xi, 1.3 * chi);
                CHECK((p1 - p2).norm() < 1e-9);
            }
        }
    }
}

TEST_CASE("enantiomorph pairs") {
    const auto grid = num::linspace(-2.0, 2.0, 2049);
    const HelicoidalSurface s = minimal_surface_embedding({1.0, 3.0, 0.0}, grid);
    const HelicoidalSurface m = s.enantiomorph();

    SUBCASE("involution") {
        const HelicoidalSurface mm = m.enantiomorph();
        for (double xi : {-1.0, 0.6}) {
            CHECK((mm.position(xi, 0.3) - s.position(xi, 0.3)).norm() == 0.0);
        }
    }
    SUBCASE("pointwise mirror in y") {
        for (double xi : {-1.2, 0.0, 1.4}) {
            for (double chi : {-0.5, 0.8}) {
                const Vec3 a = s.position(xi, chi);
                const Vec3 b = m.position(xi, chi);
                CHECK(a.x == doctest::Approx(b.x).epsilon(1e-14));
                CHECK(a.y == doctest::Approx(-b.y).epsilon(1e-14));
                CHECK(a.z == doctest::Approx(b.z).epsilon(1e-14));
            }
        }
    }
    SUBCASE("intrinsic data is preserved") {
        const HelicoidalCurvatures cs = helicoidal_curvatures(s.family(), 0.9);
        const HelicoidalCurvatures cm = helicoidal_curvatures(m.family(), 0.9);
        CHECK(cs.pair.K == doctest::Approx(cm.pair.K).epsilon(1e-14));
        CHECK(std::abs(cs.pair.H) == doctest::Approx(std::abs(cm.pair.H)).scale(1.0));
        for (double xi : {-1.0, 0.7}) {
            const FundamentalForms fa = metric_at(s, xi, 0.5);
            const FundamentalForms fb = metric_at(m, xi, 0.5);
            CHECK(fa.g11 == doctest::Approx(fb.g11).epsilon(1e-10));
            CHECK(fa.g12 == doctest::Approx(fb.g12).scale(1.0).epsilon(1e-10));
            CHECK(fa.g22 == doctest::Approx(fb.g22).epsilon(1e-10));
        }
    }
}

TEST_CASE("bour members share the metric and K but not H") {
    // fixed profile U^2 = 2 + xi^2 with two feasible (omega, a) members
    auto U = [](double xi) { return std::sqrt(2.0 + xi * xi); };
    auto dU = [](double xi) { return xi / std::sqrt(2.0 + xi * xi); };
    auto ddU = [](double xi) {
        const double P = 2.0 + xi * xi;
        return 1.0 / std::sqrt(P) - xi * xi / std::pow(P, 1.5);
    };
    BourFamily f1{U, dU, ddU, 1.0, 1.0};
    BourFamily f2{U, dU, ddU, 2.0, 1.0};
    const auto grid = num::linspace(-2.0, 2.0, 4097);
    const HelicoidalSurface s1 = bour_surface(f1, grid);
    const HelicoidalSurface s2 = bour_surface(f2, grid);

    double sup_h_diff = 0.0;
    for (double xi : {-1.8, -0.9, 0.0, 0.7, 1.6}) {
        const FundamentalForms m1 = metric_at(s1, xi, 0.8);
        const FundamentalForms m2 = metric_at(s2, xi, 0.8);
        CHECK(m1.g11 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(m2.g11 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(m1.g22 == doctest::Approx(2.0 + xi * xi).epsilon(1e-6));
        CHECK(m2.g22 == doctest::Approx(2.0 + xi * xi).epsilon(1e-6));

        const HelicoidalCurvatures c1 = helicoidal_curvatures(f1, xi);
        const HelicoidalCurvatures c2 = helicoidal_curvatures(f2, xi);
        CHECK(std::abs(c1.pair.K - c2.pair.K) < 1e-6);
        sup_h_diff = std::max(sup_h_diff, std::abs(c1.pair.H - c2.pair.H));
    }
    CHECK(sup_h_diff > 1e-3);
}
