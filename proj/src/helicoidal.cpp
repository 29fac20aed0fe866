#include "gip/helicoidal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gip {

namespace {

constexpr double kDerivStep = 5e-3;  // FD step for profile derivatives

double radicand_tol(double omega) { return 1e-9 * std::max(omega * omega, 1.0); }

}  // namespace

void BourFamily::validate() const {
    if (!U) throw ValidationError("BourFamily: missing metric profile");
    if (omega == 0.0) throw ValidationError("BourFamily: omega must be nonzero");
    if (a == 0.0) throw ValidationError("BourFamily: a must be nonzero");
}

double BourFamily::eval_dU(double xi) const {
    if (dU) return dU(xi);
    return num::deriv1(U, xi, kDerivStep);
}

double BourFamily::eval_ddU(double xi) const {
    if (ddU) return ddU(xi);
    return num::deriv2(U, xi, kDerivStep);
}

double BourFamily::radicand(double xi) const {
    const double u = U(xi), du = eval_dU(xi);
    const double a2 = a * a;
    return a2 * u * u * (omega * omega - a2 * du * du) - omega * omega;
}

void MinimalFamily::validate() const {
    if (omega == 0.0) throw ValidationError("MinimalFamily: omega must be nonzero");
    if (b() < 1.0)
        throw ValidationError("MinimalFamily: b = omega0 - omega1^2 must be >= 1 (got " +
                              std::to_string(b()) + ")");
}

BourFamily minimal_profile(const MinimalFamily& fam) {
    fam.validate();
    const double w = fam.omega, w0 = fam.omega0, w1 = fam.omega1;
    auto P = [w, w0, w1](double xi) { return w * w * xi * xi + 2.0 * w1 * w * xi + w0; };
    auto Pp = [w, w1](double xi) { return 2.0 * w * w * xi + 2.0 * w1 * w; };
    const double Ppp = 2.0 * w * w;

    BourFamily out;
    out.omega = w;
    out.a = 1.0;
    out.U = [P](double xi) { return std::sqrt(P(xi)); };
    out.dU = [P, Pp](double xi) { return Pp(xi) / (2.0 * std::sqrt(P(xi))); };
    out.ddU = [P, Pp, Ppp](double xi) {
        const double p = P(xi);
        return Ppp / (2.0 * std::sqrt(p)) - Pp(xi) * Pp(xi) / (4.0 * std::pow(p, 1.5));
    };
    return out;
}

double minimal_gaussian(const MinimalFamily& fam, double xi) {
    fam.validate();
    const double t = fam.omega * xi + fam.omega1;
    const double denom = t * t + fam.b();
    return -fam.b() * fam.omega * fam.omega / (denom * denom);
}

HelicoidalCurvatures helicoidal_curvatures(const BourFamily& family, double xi) {
    family.validate();
    const double u = family.U(xi);
    const double du = family.eval_dU(xi);
    const double ddu = family.eval_ddU(xi);
    const double a2 = family.a * family.a;
    const double w2 = family.omega * family.omega;

    HelicoidalCurvatures out;
    out.pair.K = -ddu / u;

    const double rad = a2 * u * u * (w2 - a2 * du * du) - w2;
    const double numer = a2 * (u * ddu + du * du) - w2;
    const double tol = radicand_tol(family.omega);
    if (rad <= tol) {
        out.h_singular = true;
        out.pair.H = (std::abs(numer) <= 1e-7 * std::max(w2, 1.0))
                         ? 0.0
                         : std::numeric_limits<double>::infinity();
    } else {
        out.pair.H = numer / (2.0 * std::sqrt(rad));
    }
    return out;
}

NaturalParameters natural_parameters(const Profile& lambda_of_rho, double omega,
                                     const std::vector<double>& rho_grid) {
    if (rho_grid.size() < 5) throw ValidationError("natural_parameters: need >= 5 grid points");
    const double h = num::uniform_spacing(rho_grid);
    if (rho_grid.front() <= 0.0)
        throw ValidationError("natural_parameters: rho must stay positive");

    auto lam = [&lambda_of_rho](double r) { return lambda_of_rho(r); };
    std::vector<double> dxi(rho_grid.size()), dchi(rho_grid.size());
    for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        const double r = rho_grid[i];
        const double lp = num::deriv1_clamped(lam, r, h, lambda_of_rho.lo(), lambda_of_rho.hi());
        const double w2r2 = omega * omega * r * r;
        dxi[i] = std::sqrt(1.0 + w2r2 * lp * lp / (1.0 + w2r2));
        dchi[i] = lp / (1.0 + w2r2);
    }
    NaturalParameters out;
    out.xi = num::cumulative_simpson(dxi, h);
    out.chi_correction = num::cumulative_simpson(dchi, h);
    return out;
}

HelicoidalSurface::HelicoidalSurface(BourFamily family, double xi0, double xi1,
                                     std::shared_ptr<num::CubicSpline> lambda,
                                     std::shared_ptr<num::CubicSpline> phi_offset)
    : family_(std::move(family)), xi0_(xi0), xi1_(xi1), lambda_(std::move(lambda)),
      phi_offset_(std::move(phi_offset)) {}

double HelicoidalSurface::rho(double xi) const {
    const double u = family_.U(xi);
    const double r2 = family_.a * family_.a * u * u - 1.0;
    return std::sqrt(std::max(0.0, r2)) / std::abs(family_.omega);
}

double HelicoidalSurface::lambda(double xi) const { return lambda_ ? (*lambda_)(xi) : 0.0; }

double HelicoidalSurface::phi(double xi, double chi) const {
    return chi / family_.a + (phi_offset_ ? (*phi_offset_)(xi) : 0.0);
}

Vec3 HelicoidalSurface::position(double xi, double chi) const {
    const double r = rho(xi);
    const double ph = phi(xi, chi);
    const double ang = family_.omega * ph;
    return {r * std::cos(ang), r * std::sin(ang), lambda(xi) + ph};
}

ParamSurface HelicoidalSurface::patch(double chi0, double chi1) const {
    ParamSurface p;
    p.map = [*this](double xi, double chi) { return position(xi, chi); };
    p.u0 = xi0_;
    p.u1 = xi1_;
    p.v0 = chi0;
    p.v1 = chi1;
    return p;
}

InvariantSurface HelicoidalSurface::as_invariant(double chi0, double chi1) const {
    InvariantSurface s;
    s.patch = patch(chi0, chi1);
    s.symmetry = Symmetry::screw;
    s.metric_f = family_.U;
    s.gen_x = [*this](double xi) { return rho(xi); };
    s.gen_z = [*this](double xi) { return lambda(xi); };
    return s;
}

HelicoidalSurface HelicoidalSurface::enantiomorph() const {
    HelicoidalSurface mirror = *this;
    mirror.family_.omega = -mirror.family_.omega;
    return mirror;
}

HelicoidalSurface bour_surface(const BourFamily& family, const std::vector<double>& xi_grid) {
    family.validate();
    if (xi_grid.size() < 5) throw ValidationError("bour_surface: need >= 5 grid points");
    const double h = num::uniform_spacing(xi_grid);

    const double tol = radicand_tol(family.omega);
    std::vector<double> rad(xi_grid.size());
    double rad_max = 0.0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        rad[i] = family.radicand(xi_grid[i]);
        if (rad[i] < -tol) {
            std::ostringstream os;
            os << "bour_surface: infeasible family, a^2 U^2 [omega^2 - a^2 U'^2] - omega^2 = "
               << rad[i] << " < 0 at xi = " << xi_grid[i];
            throw InfeasibleError(os.str());
        }
        rad[i] = std::max(0.0, rad[i]);
        rad_max = std::max(rad_max, rad[i]);
    }

    if (rad_max <= tol) {
        // Degenerate integrands: height and angle offsets vanish identically.
        return HelicoidalSurface(family, xi_grid.front(), xi_grid.back(), nullptr, nullptr);
    }

    std::vector<double> dlam(xi_grid.size()), dphi(xi_grid.size());
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const double u = family.U(xi_grid[i]);
        const double au = family.a * u;
        const double denom = au * au - 1.0;
        if (denom <= 1e-9)
            throw InfeasibleError("bour_surface: a^2 U^2 - 1 must stay positive on the grid "
                                  "(violated at xi = " +
                                  std::to_string(xi_grid[i]) + ")");
        const double root = std::sqrt(rad[i]);
        dlam[i] = au * root / (family.omega * denom);
        dphi[i] = -root / (family.omega * au * denom);
    }
    auto lam = std::make_shared<num::CubicSpline>(xi_grid, num::cumulative_simpson(dlam, h));
    auto pho = std::make_shared<num::CubicSpline>(xi_grid, num::cumulative_simpson(dphi, h));
    return HelicoidalSurface(family, xi_grid.front(), xi_grid.back(), std::move(lam),
                             std::move(pho));
}

HelicoidalSurface minimal_surface_embedding(const MinimalFamily& fam,
                                            const std::vector<double>& xi_grid) {
    fam.validate();
    if (xi_grid.size() < 5)
        throw ValidationError("minimal_surface_embedding: need >= 5 grid points");
    const double h = num::uniform_spacing(xi_grid);
    const BourFamily family = minimal_profile(fam);
    const double b = fam.b();

    if (b <= 1.0 + 1e-12) {
        return HelicoidalSurface(family, xi_grid.front(), xi_grid.back(), nullptr, nullptr);
    }

    const double w = fam.omega, w0 = fam.omega0, w1 = fam.omega1;
    std::vector<double> dlam(xi_grid.size()), dphi(xi_grid.size());
    const double root_bm1 = std::sqrt(b - 1.0);
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const double xi = xi_grid[i];
        const double P = w * w * xi * xi + 2.0 * w1 * w * xi + w0;
        if (P - 1.0 <= 0.0)
            throw InfeasibleError("minimal_surface_embedding: radius radicand <= 0 at xi = " +
                                  std::to_string(xi));
        dlam[i] = root_bm1 * std::sqrt(P) / (P - 1.0);
        dphi[i] = -root_bm1 / (std::sqrt(P) * (P - 1.0));
    }
    auto lam = std::make_shared<num::CubicSpline>(xi_grid, num::cumulative_simpson(dlam, h));
    auto pho = std::make_shared<num::CubicSpline>(xi_grid, num::cumulative_simpson(dphi, h));
    return HelicoidalSurface(family, xi_grid.front(), xi_grid.back(), std::move(lam),
                             std::move(pho));
}

}  // namespace gip
