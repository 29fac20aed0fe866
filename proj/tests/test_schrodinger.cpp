#include <cmath>

#include "doctest.h"
#include "gip/numerics.hpp"
#include "gip/schrodinger.hpp"

using namespace gip;

namespace {

const PhysicalConstants natural{};

EffectivePotential1D helicoid_veff(int m_chi, double L = 20.0, std::size_t n = 4001) {
    return helicoidal_minimal_veff({1.0, 1.0, 0.0}, m_chi, natural,
                                   num::linspace(-L, L, n));
}

}  // namespace

TEST_CASE("effective potential: flat metric gives zero") {
    MetricProfile f{[](double) { return 1.0; }, 0.0, 5.0};
    const EffectivePotential1D V = effective_potential(f, nullptr, natural, 0.0, 101);
    for (double v : V.V) CHECK(v == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("effective potential: cylinder recovers the -kappa^2/8 well") {
    const double kappa = 0.7;
    MetricProfile f{[](double) { return 1.0; }, 0.0, 5.0};
    auto H = [kappa](double) { return kappa / 2.0; };
    const EffectivePotential1D V = effective_potential(f, H, natural, 0.0, 101);
    for (double v : V.V)
        CHECK(v == doctest::Approx(-kappa * kappa / 8.0).epsilon(1e-12));
}

TEST_CASE("effective potential: revolution identity against the dedicated op") {
    auto xfun = [](double u) { return 2.0 + 0.3 * std::sin(u); };
    MetricProfile x{xfun, 0.0, 5.0};
    const int m = 2;
    const EffectivePotential1D direct = revolution_effective(x, m, natural, 301);

    // generic route: lambda = m^2, H from the graph formula
    const std::vector<double> grid = num::linspace(0.0, 5.0, 301);
    const double h = grid[1] - grid[0];
    std::vector<double> xs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) xs[i] = xfun(grid[i]);
    const auto x1 = num::deriv1_samples(xs, h);
    const auto x2 = num::deriv2_samples(xs, h);
    std::vector<double> Hs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double zp2 = 1.0 - x1[i] * x1[i];
        Hs[i] = (zp2 - xs[i] * x2[i]) / (2.0 * xs[i] * std::sqrt(zp2));
    }
    num::CubicSpline Hspl(grid, Hs);
    const EffectivePotential1D generic = effective_potential(
        x, [&Hspl](double u) { return Hspl(u); }, natural, static_cast<double>(m * m), 301);

    for (std::size_t i = 5; i + 5 < grid.size(); i += 23)
        CHECK(direct.V[i] == doctest::Approx(generic.V[i]).epsilon(1e-8));
}

TEST_CASE("revolution effective potential smoke values") {
    SUBCASE("unit cylinder") {
        MetricProfile x{[](double) { return 1.0; }, 0.0, 4.0};
        const EffectivePotential1D V = revolution_effective(x, 0, natural, 101);
        for (double v : V.V) CHECK(v == doctest::Approx(-0.125).epsilon(1e-12));
    }
    SUBCASE("large angular momentum is repulsive") {
        MetricProfile x{[](double) { return 1.0; }, 0.0, 4.0};
        const EffectivePotential1D V = revolution_effective(x, 5, natural, 101);
        for (double v : V.V) CHECK(v > 0.0);
    }
    SUBCASE("sphere potential finite at the equator") {
        MetricProfile x{[](double u) { return std::sin(u); }, 0.3, M_PI - 0.3, };
        const EffectivePotential1D V = revolution_effective(x, 0, natural, 201);
        const double mid = V.V[V.V.size() / 2];
        CHECK(std::isfinite(mid));
        CHECK(mid == doctest::Approx(-0.25).epsilon(1e-4));
    }
}

TEST_CASE("helicoidal effective potential closed form") {
    SUBCASE("benchmark value at the axis") {
        const EffectivePotential1D V = helicoid_veff(0, 2.0, 201);
        const double v0 = V.V[100];  // xi = 0
        CHECK(v0 == doctest::Approx(-0.25).epsilon(1e-12));
    }
    SUBCASE("m = 0 attractive everywhere, m = 1 repulsive everywhere") {
        const EffectivePotential1D V0 = helicoid_veff(0);
        const EffectivePotential1D V1 = helicoid_veff(1);
        for (std::size_t i = 0; i < V0.V.size(); ++i) {
            CHECK(V0.V[i] < 0.0);
            CHECK(V1.V[i] > 0.0);
        }
    }
    SUBCASE("term sign structure") {
        // first term attractive for any parameters; second flips at m^2 = 1/4
        for (MinimalFamily fam : {MinimalFamily{1.0, 1.0, 0.0}, MinimalFamily{2.0, 5.0, 1.0}}) {
            for (double xi : {-3.0, 0.0, 2.0}) {
                const double B = fam.b() + std::pow(fam.omega * xi + fam.omega1, 2.0);
                CHECK(-fam.b() / (B * B) < 0.0);
                CHECK(1.0 - 4.0 * 0.0 > 0.0);        // m = 0: attractive
                CHECK(1.0 - 4.0 * 1.0 < 0.0);        // |m| = 1: repulsive
            }
        }
    }
    SUBCASE("b = 1 reduction agrees with the generic separated potential") {
        const MinimalFamily hel{1.0, 1.0, 0.0};
        const auto grid = num::linspace(-3.0, 3.0, 601);
        const int m = 1;
        const EffectivePotential1D closed = helicoidal_minimal_veff(hel, m, natural, grid);

        const BourFamily fam = minimal_profile(hel);
        MetricProfile f{fam.U, -3.0, 3.0};
        const double lam = std::pow(quantize_k_chi(m, hel.omega), 2.0);
        const EffectivePotential1D generic =
            effective_potential(f, [](double) { return 0.0; }, natural, lam, 601);
        for (std::size_t i = 0; i < grid.size(); i += 37)
            CHECK(closed.V[i] == doctest::Approx(generic.V[i]).epsilon(1e-8).scale(1.0));
    }
    SUBCASE("chirality flip leaves the potential unchanged") {
        const auto grid = num::linspace(-5.0, 5.0, 301);
        const EffectivePotential1D a =
            helicoidal_minimal_veff({2.0, 5.0, 1.0}, 1, natural, grid);
        const EffectivePotential1D b =
            helicoidal_minimal_veff({-2.0, 5.0, -1.0}, 1, natural, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(a.V[i] == doctest::Approx(b.V[i]).epsilon(1e-15).scale(1.0));
    }
}

TEST_CASE("quantized momentum along the orbits") {
    CHECK(quantize_k_chi(0, 1.7) == 0.0);
    CHECK(quantize_k_chi(2, 0.5) == doctest::Approx(1.0));
    CHECK(quantize_k_chi(-3, 2.0) == doctest::Approx(-6.0));
}

TEST_CASE("eigensolver: particle in a box") {
    const double L = 3.0;
    EffectivePotential1D V;
    V.u = num::linspace(0.0, L, 2000);
    V.V.assign(2000, 0.0);
    const Spectrum sp = solve_1d_eigen(V, BoundaryCondition::dirichlet, natural, 5);
    for (int n = 1; n <= 5; ++n) {
        const double exact = n * n * M_PI * M_PI / (2.0 * L * L);
        CHECK(sp.energies[n - 1] == doctest::Approx(exact).epsilon(1e-4));
        CHECK_FALSE(sp.bound[n - 1]);
    }
    // discrete normalization
    const double h = V.u[1] - V.u[0];
    for (const auto& psi : sp.states) {
        double nrm = 0.0;
        for (double p : psi) nrm += p * p * h;
        CHECK(nrm == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("eigensolver: harmonic oscillator ladder") {
    EffectivePotential1D V;
    V.u = num::linspace(-12.0, 12.0, 3000);
    V.V.resize(V.u.size());
    for (std::size_t i = 0; i < V.u.size(); ++i) V.V[i] = 0.5 * V.u[i] * V.u[i];
    const Spectrum sp = solve_1d_eigen(V, BoundaryCondition::dirichlet, natural, 6);
    for (int n = 0; n <= 5; ++n)
        CHECK(sp.energies[n] == doctest::Approx(n + 0.5).epsilon(1e-3));
}

TEST_CASE("eigensolver: periodic ring spectrum with degeneracies") {
    const double L = 2.0 * M_PI;
    const std::size_t n = 1024;
    EffectivePotential1D V;
    V.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) V.u[i] = static_cast<double>(i) * L / n;
    V.V.assign(n, 0.0);
    const Spectrum sp = solve_1d_eigen(V, BoundaryCondition::periodic, natural, 7);

    CHECK(sp.energies[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    for (int k = 1; k <= 3; ++k) {
        const double exact = 0.5 * k * k;  // hbar^2 (2 pi k / L)^2 / 2m with L = 2 pi
        CHECK(sp.energies[2 * k - 1] == doctest::Approx(exact).epsilon(1e-4));
        CHECK(sp.energies[2 * k] == doctest::Approx(exact).epsilon(1e-4));
        // exact double degeneracy at the discrete level
        CHECK(sp.energies[2 * k] - sp.energies[2 * k - 1] ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    }
    // orthogonality within the degenerate pair
    const double h = L / n;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += sp.states[1][i] * sp.states[2][i] * h;
    CHECK(std::abs(dot) < 1e-8);
}

TEST_CASE("eigensolver: grid validation") {
    EffectivePotential1D V;
    V.u = {0.0, 0.1, 0.25, 0.3, 0.4};
    V.V.assign(5, 0.0);
    CHECK_THROWS_AS(solve_1d_eigen(V, BoundaryCondition::dirichlet, natural, 1),
                    ValidationError);
    V.u = num::linspace(0.0, 1.0, 5);
    CHECK_THROWS_AS(solve_1d_eigen(V, BoundaryCondition::dirichlet, natural, 4),
                    ValidationError);
}

TEST_CASE("eigensolver: halving the spacing moves eigenvalues within bound") {
    const double L = 3.0;
    auto solve_with = [&](std::size_t n) {
        EffectivePotential1D V;
        V.u = num::linspace(0.0, L, n);
        V.V.resize(n);
        for (std::size_t i = 0; i < n; ++i) V.V[i] = -0.3 * std::sin(M_PI * V.u[i] / L);
        return solve_1d_eigen(V, BoundaryCondition::dirichlet, natural, 4);
    };
    const Spectrum coarse = solve_with(2000);
    const Spectrum fine = solve_with(4000);
    for (std::size_t k = 0; k < 4; ++k) {
        const double rel = std::abs(coarse.energies[k] - fine.energies[k]) /
                           std::abs(fine.energies[k]);
        CHECK(rel < 4.0 * 1e-4);
    }
}

TEST_CASE("helicoid carries a geometry-induced bound state") {
    const Spectrum sp = solve_1d_eigen(helicoid_veff(0), BoundaryCondition::dirichlet,
                                       natural, 3);
    CHECK(sp.energies[0] < 0.0);
    CHECK(sp.bound[0]);
}

TEST_CASE("bound-state criterion") {
    CHECK(bound_state_criterion(helicoid_veff(0)));
    CHECK_FALSE(bound_state_criterion(helicoid_veff(1)));
    EffectivePotential1D zero;
    zero.u = num::linspace(0.0, 1.0, 101);
    zero.V.assign(101, 0.0);
    CHECK_FALSE(bound_state_criterion(zero));
}

TEST_CASE("cylinder spectrum") {
    const PhysicalConstants c;
    SUBCASE("flat open strip matches the double-box formula") {
        const Profile kappa = Profile::constant(0.0, 0.0, 2.0);
        const double Lu = 2.0, Lv = 3.0;
        const auto table = cylinder_spectrum(kappa, Lu, Lv, false, c, 3, 2001);
        for (const auto& lvl : table) {
            const double exact = M_PI * M_PI / 2.0 *
                                 (lvl.n_v * lvl.n_v / (Lv * Lv) + lvl.n_u * lvl.n_u / (Lu * Lu));
            CHECK(lvl.energy == doctest::Approx(exact).epsilon(1e-4));
        }
    }
    SUBCASE("flat closed section: n_u = 0 allowed, ring levels") {
        const Profile kappa = Profile::constant(0.0, 0.0, 2.0);
        const double Lu = 2.0, Lv = 3.0;
        const auto table = cylinder_spectrum(kappa, Lu, Lv, true, c, 3, 2000);
        for (const auto& lvl : table) {
            const double exact = M_PI * M_PI / 2.0 * lvl.n_v * lvl.n_v / (Lv * Lv) +
                                 2.0 * M_PI * M_PI * lvl.n_u * lvl.n_u / (Lu * Lu);
            CHECK(lvl.energy == doctest::Approx(exact).epsilon(1e-4).scale(1.0));
        }
        CHECK(table.front().n_u == 0);
    }
    SUBCASE("constant curvature shifts every level exactly") {
        const double R = 1.5;
        const double Lu = 2.0 * M_PI * R;
        const Profile flat = Profile::constant(0.0, 0.0, Lu);
        const Profile curved = Profile::constant(1.0 / R, 0.0, Lu);
        const auto t0 = cylinder_spectrum(flat, Lu, 3.0, true, c, 3, 1500);
        const auto t1 = cylinder_spectrum(curved, Lu, 3.0, true, c, 3, 1500);
        const double shift = -1.0 / (8.0 * R * R);
        for (std::size_t i = 0; i < t0.size(); ++i)
            CHECK(t1[i].energy - t0[i].energy == doctest::Approx(shift).epsilon(1e-10));
    }
}

TEST_CASE("helicoid map: parameters and spectra") {
    SUBCASE("identity on the helicoid") {
        const HelicoidMap m = map_to_helicoid({1.0, 1.0, 0.0});
        CHECK(m.scale == doctest::Approx(1.0));
        CHECK(m.shift == doctest::Approx(0.0).scale(1.0));
        CHECK(m.energy_factor == doctest::Approx(1.0));
    }
    SUBCASE("omega0 = 3 member") {
        const HelicoidMap m = map_to_helicoid({1.0, 3.0, 0.0});
        CHECK(m.scale == doctest::Approx(std::sqrt(3.0)));
        CHECK(m.shift == doctest::Approx(0.0).scale(1.0));
        CHECK(m.energy_factor == doctest::Approx(3.0));
    }
    SUBCASE("bound-state energies map with the factor b") {
        const MinimalFamily fam{1.0, 3.0, 0.0};
        const HelicoidMap m = map_to_helicoid(fam);
        const double L = 20.0;
        const EffectivePotential1D Vmin =
            helicoidal_minimal_veff(fam, 0, natural, num::linspace(-L, L, 16001));
        const Spectrum smin = solve_1d_eigen(Vmin, BoundaryCondition::dirichlet, natural, 1);

        // helicoid-form equation on the mapped box, independent grid size
        const double Lt = L / m.scale;
        const auto tgrid = num::linspace(-Lt, Lt, 20001);
        EffectivePotential1D Vhel = helicoidal_minimal_veff({1.0, 1.0, 0.0}, 0, natural, tgrid);
        const Spectrum shel = solve_1d_eigen(Vhel, BoundaryCondition::dirichlet, natural, 1);

        CHECK(smin.energies[0] < 0.0);
        CHECK(smin.energies[0] ==
              doctest::Approx(shel.energies[0] / m.energy_factor).epsilon(1e-4));
    }
}

TEST_CASE("separated solution is an exact eigenvector of the 2D operator") {
    // coarse tensor grid; the v direction carries one Fourier sector
    const MinimalFamily fam{1.0, 3.0, 0.0};
    const BourFamily prof = minimal_profile(fam);
    const int m_chi = 1;
    const double L = 15.0;
    const std::size_t Nu = 201, Nv = 32;
    const double period = 2.0 * M_PI / fam.omega;
    const double hv = period / Nv;
    const double hu = 2.0 * L / (Nu - 1);

    // discrete separation constant of the v-sector
    const double kchi = quantize_k_chi(m_chi, fam.omega);
    const double lam_disc = (2.0 - 2.0 * std::cos(kchi * hv)) / (hv * hv);

    // geometric part of the potential (m = 0 closed form)
    const auto ugrid = num::linspace(-L, L, Nu);
    const EffectivePotential1D Vgeo = helicoidal_minimal_veff(fam, 0, natural, ugrid);

    EffectivePotential1D V1d = Vgeo;
    for (std::size_t i = 0; i < Nu; ++i) {
        const double f = prof.U(ugrid[i]);
        V1d.V[i] += 0.5 * lam_disc / (f * f);
    }
    const Spectrum s1 = solve_1d_eigen(V1d, BoundaryCondition::dirichlet, natural, 1);
    const double E = s1.energies[0];

    // continuum separation constant at this resolution stays within 1%
    EffectivePotential1D Vcont = Vgeo;
    for (std::size_t i = 0; i < Nu; ++i) {
        const double f = prof.U(ugrid[i]);
        Vcont.V[i] += 0.5 * kchi * kchi / (f * f);
    }
    const Spectrum s2 = solve_1d_eigen(Vcont, BoundaryCondition::dirichlet, natural, 1);
    CHECK(std::abs(s1.energies[0] - s2.energies[0]) / std::abs(s2.energies[0]) < 1e-2);

    // assemble psi(u,v) = A(u) cos(k v) and apply the 2D Hamiltonian stencil
    std::vector<double> psi(Nu * Nv), Hpsi(Nu * Nv, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return psi[i * Nv + j]; };
    for (std::size_t i = 0; i < Nu; ++i)
        for (std::size_t j = 0; j < Nv; ++j)
            at(i, j) = s1.states[0][i] * std::cos(kchi * (hv * j));

    double res2 = 0.0, norm2v = 0.0;
    for (std::size_t i = 1; i + 1 < Nu; ++i) {
        const double f = prof.U(ugrid[i]);
        for (std::size_t j = 0; j < Nv; ++j) {
            const std::size_t jp = (j + 1) % Nv, jm = (j + Nv - 1) % Nv;
            const double lap_u =
                (psi[(i + 1) * Nv + j] - 2.0 * psi[i * Nv + j] + psi[(i - 1) * Nv + j]) /
                (hu * hu);
            const double lap_v =
                (psi[i * Nv + jp] - 2.0 * psi[i * Nv + j] + psi[i * Nv + jm]) / (hv * hv);
            const double H2d =
                -0.5 * (lap_u + lap_v / (f * f)) + Vgeo.V[i] * psi[i * Nv + j];
            const double r = H2d - E * psi[i * Nv + j];
            res2 += r * r;
            norm2v += psi[i * Nv + j] * psi[i * Nv + j];
        }
    }
    CHECK(std::sqrt(res2 / norm2v) < 1e-10);
}
