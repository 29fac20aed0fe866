#include "gip/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <memory>
#include <sstream>

#include "gip/numerics.hpp"

namespace gip {

namespace {

constexpr double kMaskTol = 1e-6;  // truncation threshold for 1 - rho^2 A^2

std::string format_range(double a, double b) {
    std::ostringstream os;
    os << "[" << a << ", " << b << "]";
    return os.str();
}

struct ValidWindow {
    std::size_t lo, hi;   // inclusive index range
    bool cut_lo, cut_hi;  // window ends inside the grid
};

ValidWindow mask_window(const std::vector<double>& mask, std::size_t i0) {
    ValidWindow w{i0, i0, false, false};
    while (w.lo > 0 && mask[w.lo - 1] > kMaskTol) --w.lo;
    while (w.hi + 1 < mask.size() && mask[w.hi + 1] > kMaskTol) ++w.hi;
    w.cut_lo = w.lo > 0;
    w.cut_hi = w.hi + 1 < mask.size();
    return w;
}

}  // namespace

void RevolutionFamilyParams::validate() const {
    if (!U.valid()) throw ValidationError("RevolutionFamilyParams: missing U profile");
    if (!(rho0 > 0.0)) throw ValidationError("RevolutionFamilyParams: rho0 must be > 0");
    if (sign_A != 1 && sign_A != -1)
        throw ValidationError("RevolutionFamilyParams: sign_A must be +-1");
    if (sign_lambda != 1 && sign_lambda != -1)
        throw ValidationError("RevolutionFamilyParams: sign_lambda must be +-1");
    for (double r : U.grid())
        if (U(r) < 0.0)
            throw InfeasibleError("RevolutionFamilyParams: U must be >= 0 (got U(" +
                                  std::to_string(r) + ") < 0)");
}

std::vector<double> A_from_potential(const Profile& U, double rho0, double a1, int sign,
                                     const std::vector<double>& rho_grid) {
    if (rho_grid.size() < 5) throw ValidationError("A_from_potential: need >= 5 grid points");
    const double h = num::uniform_spacing(rho_grid);
    if (rho_grid.front() <= 0.0)
        throw ValidationError("A_from_potential: grid touches rho = 0 (singular integrand)");
    if (rho0 < rho_grid.front() - 1e-12 || rho0 > rho_grid.back() + 1e-12)
        throw ValidationError("A_from_potential: rho0 outside the grid range");

    std::vector<double> integrand(rho_grid.size());
    for (std::size_t i = 0; i < rho_grid.size(); ++i) integrand[i] = U(rho_grid[i]) / rho_grid[i];
    const std::vector<double> C = num::cumulative_simpson(integrand, h);
    const num::CubicSpline cspl(rho_grid, C);
    const double C0 = cspl(rho0);

    std::vector<double> A(rho_grid.size());
    for (std::size_t i = 0; i < rho_grid.size(); ++i)
        A[i] = sign * (2.0 * (C[i] - C0) + a1);
    return A;
}

GeneratingCurveRev generating_curve_vertical(const RevolutionFamilyParams& params,
                                             const std::vector<double>& rho_grid) {
    params.validate();
    const double h = num::uniform_spacing(rho_grid);
    const std::vector<double> A = A_from_potential(params.U, params.rho0, params.a1,
                                                   params.sign_A, rho_grid);

    std::vector<double> mask(rho_grid.size());
    for (std::size_t i = 0; i < rho_grid.size(); ++i)
        mask[i] = 1.0 - rho_grid[i] * rho_grid[i] * A[i] * A[i];

    const auto i0 = static_cast<std::size_t>(
        std::llround((params.rho0 - rho_grid.front()) / h));
    if (i0 >= rho_grid.size() || mask[i0] <= kMaskTol)
        throw InfeasibleError("generating_curve_vertical: 1 - rho0^2 A^2(rho0) <= 0; no "
                              "solution in a neighborhood of rho0");

    const ValidWindow w = mask_window(mask, i0);
    if (w.hi - w.lo + 1 < 5)
        throw InfeasibleError("generating_curve_vertical: valid neighborhood of rho0 spans "
                              "fewer than 5 grid points");

    GeneratingCurveRev out;
    out.rho.assign(rho_grid.begin() + w.lo, rho_grid.begin() + w.hi + 1);
    out.A.assign(A.begin() + w.lo, A.begin() + w.hi + 1);
    out.mask.assign(mask.begin() + w.lo, mask.begin() + w.hi + 1);
    out.truncated_lo = w.cut_lo;
    out.truncated_hi = w.cut_hi;
    out.orientation = params.sign_A * params.sign_lambda;

    std::vector<double> slope(out.rho.size());
    for (std::size_t i = 0; i < out.rho.size(); ++i)
        slope[i] = params.sign_lambda * out.rho[i] * out.A[i] / std::sqrt(out.mask[i]);
    const std::vector<double> L = num::cumulative_simpson(slope, h);
    const double L0 = L[i0 - w.lo];
    out.lambda.resize(out.rho.size());
    for (std::size_t i = 0; i < out.rho.size(); ++i)
        out.lambda[i] = params.a2 + (L[i] - L0);

    if (w.cut_lo || w.cut_hi) {
        out.note = "domain truncated to " + format_range(out.rho.front(), out.rho.back()) +
                   " where 1 - rho^2 A^2 > " + std::to_string(kMaskTol);
    }
    return out;
}

namespace {

// Shared arc-length machinery: both revolution routes integrate
// du = drho / sqrt(mask) and expose splines in rho.
struct ArcTables {
    std::shared_ptr<num::CubicSpline> s_of_rho;  // monotone increasing
    std::shared_ptr<num::CubicSpline> height;    // lambda(rho) or q(rho)
    double length;
};

ArcTables build_arcs(const std::vector<double>& rho, const std::vector<double>& mask,
                     const std::vector<double>& height) {
    const double h = num::uniform_spacing(rho);
    std::vector<double> speed(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) speed[i] = 1.0 / std::sqrt(mask[i]);
    std::vector<double> s = num::cumulative_simpson(speed, h);
    ArcTables t;
    t.length = s.back();
    t.s_of_rho = std::make_shared<num::CubicSpline>(rho, std::move(s));
    t.height = std::make_shared<num::CubicSpline>(rho, height);
    return t;
}

}  // namespace

InvariantSurface revolve_vertical(const GeneratingCurveRev& curve) {
    if (curve.rho.size() < 5) throw ValidationError("revolve_vertical: too few samples");
    if (curve.rho.front() <= 0.0) throw ValidationError("revolve_vertical: rho must be > 0");
    const ArcTables t = build_arcs(curve.rho, curve.mask, curve.lambda);

    auto rho_of_u = [t](double u) { return t.s_of_rho->invert(u); };
    InvariantSurface surf;
    surf.symmetry = Symmetry::rotation;
    surf.patch.map = [t](double u, double phi) {
        const double r = t.s_of_rho->invert(u);
        return Vec3{r * std::cos(phi), r * std::sin(phi), (*t.height)(r)};
    };
    surf.patch.u0 = 0.0;
    surf.patch.u1 = t.length;
    surf.patch.v0 = 0.0;
    surf.patch.v1 = 2.0 * std::numbers::pi;
    surf.metric_f = rho_of_u;
    surf.gen_x = rho_of_u;
    surf.gen_z = [t](double u) { return (*t.height)(t.s_of_rho->invert(u)); };
    surf.orientation = curve.orientation;
    surf.truncated = curve.truncated_lo || curve.truncated_hi;
    surf.note = curve.note;
    return surf;
}

HorizontalGeneratingCurve generating_curve_horizontal(const RevolutionFamilyParams& params,
                                                      const std::vector<double>& rho_grid) {
    GeneratingCurveRev vertical = generating_curve_vertical(params, rho_grid);
    for (std::size_t i = 0; i < vertical.A.size(); ++i) {
        if (vertical.A[i] <= 0.0)
            throw InfeasibleError(
                "generating_curve_horizontal: A must stay positive on the domain (A is the "
                "reciprocal of rho times the generating-curve speed)");
    }
    HorizontalGeneratingCurve out;
    out.rho = std::move(vertical.rho);
    out.q = std::move(vertical.lambda);
    out.A = std::move(vertical.A);
    out.mask = std::move(vertical.mask);
    out.truncated_lo = vertical.truncated_lo;
    out.truncated_hi = vertical.truncated_hi;
    out.orientation = vertical.orientation;
    out.note = std::move(vertical.note);
    return out;
}

Profile rho_of_q(const HorizontalGeneratingCurve& curve) {
    if (curve.q.size() < 5) throw ValidationError("rho_of_q: too few samples");
    std::vector<double> q = curve.q, r = curve.rho;
    const bool increasing = q.back() > q.front();
    if (!increasing) {
        std::reverse(q.begin(), q.end());
        std::reverse(r.begin(), r.end());
    }
    for (std::size_t i = 1; i < q.size(); ++i)
        if (!(q[i] > q[i - 1]))
            throw InfeasibleError("rho_of_q: q(rho) is not strictly monotone; the generating "
                                  "curve is not a graph over the axis");
    return Profile::from_samples(std::move(q), std::move(r));
}

InvariantSurface revolve_horizontal(const Profile& rho_profile) {
    const std::size_t n = std::max<std::size_t>(rho_profile.samples(), 1025);
    const std::vector<double> q = num::linspace(rho_profile.lo(), rho_profile.hi(), n);
    const double h = q[1] - q[0];

    auto rho_fn = [&rho_profile](double t) { return rho_profile(t); };
    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rho_profile(q[i]);
        if (!(r > 0.0)) throw ValidationError("revolve_horizontal: rho(q) must be > 0");
        const double rp = num::deriv1_clamped(rho_fn, q[i], h, rho_profile.lo(),
                                              rho_profile.hi());
        speed[i] = std::sqrt(1.0 + rp * rp);
    }
    auto s_of_q = std::make_shared<num::CubicSpline>(q, num::cumulative_simpson(speed, h));

    // Orientation from the induced-potential sign at the domain midpoint.
    const double qm = 0.5 * (rho_profile.lo() + rho_profile.hi());
    const double r_m = rho_profile(qm);
    const double rp_m = num::deriv1_clamped(rho_fn, qm, h, rho_profile.lo(), rho_profile.hi());
    const double rpp_m = num::deriv2_clamped(rho_fn, qm, h, rho_profile.lo(), rho_profile.hi());
    const double w2 = 1.0 + rp_m * rp_m;
    const double signed_u = -(1.0 + rp_m * rp_m + r_m * rpp_m) /
                            (2.0 * r_m * std::pow(w2, 1.5));
    const int orientation = (std::abs(signed_u) < 1e-6) ? 1 : (signed_u > 0 ? 1 : -1);

    auto profile_copy = std::make_shared<Profile>(rho_profile);
    auto q_of_u = [s_of_q](double u) { return s_of_q->invert(u); };
    InvariantSurface surf;
    surf.symmetry = Symmetry::rotation;
    surf.patch.map = [s_of_q, profile_copy](double u, double phi) {
        const double qq = s_of_q->invert(u);
        const double r = (*profile_copy)(qq);
        return Vec3{qq, r * std::sin(phi), r * std::cos(phi)};
    };
    surf.patch.u0 = 0.0;
    surf.patch.u1 = (*s_of_q)(rho_profile.hi());
    surf.patch.v0 = 0.0;
    surf.patch.v1 = 2.0 * std::numbers::pi;
    surf.metric_f = [s_of_q, profile_copy](double u) {
        return (*profile_copy)(s_of_q->invert(u));
    };
    surf.gen_x = surf.metric_f;
    surf.gen_z = q_of_u;
    surf.orientation = orientation;
    return surf;
}

InvariantSurface revolve_horizontal(const HorizontalGeneratingCurve& curve) {
    if (curve.rho.size() < 5) throw ValidationError("revolve_horizontal: too few samples");
    if (curve.rho.front() <= 0.0) throw ValidationError("revolve_horizontal: rho must be > 0");
    const ArcTables t = build_arcs(curve.rho, curve.mask, curve.q);

    auto rho_of_u = [t](double u) { return t.s_of_rho->invert(u); };
    InvariantSurface surf;
    surf.symmetry = Symmetry::rotation;
    surf.patch.map = [t](double u, double phi) {
        const double r = t.s_of_rho->invert(u);
        return Vec3{(*t.height)(r), r * std::sin(phi), r * std::cos(phi)};
    };
    surf.patch.u0 = 0.0;
    surf.patch.u1 = t.length;
    surf.patch.v0 = 0.0;
    surf.patch.v1 = 2.0 * std::numbers::pi;
    surf.metric_f = rho_of_u;
    surf.gen_x = rho_of_u;
    surf.gen_z = [t](double u) { return (*t.height)(t.s_of_rho->invert(u)); };
    surf.orientation = curve.orientation;
    surf.truncated = curve.truncated_lo || curve.truncated_hi;
    surf.note = curve.note;
    return surf;
}

double kenmotsu_residual(const InvariantSurface& surface, const Profile& U_of_rho) {
    if (!surface.gen_x || !surface.gen_z)
        throw ValidationError("kenmotsu_residual: surface carries no generating curve");
    const double u0 = surface.patch.u0, u1 = surface.patch.u1;
    const std::size_t n = 1025;
    const std::vector<double> u = num::linspace(u0, u1, n);
    const double h = u[1] - u[0];

    std::vector<double> x(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = surface.gen_x(u[i]);
        z[i] = surface.gen_z(u[i]);
        if (!(x[i] > 0.0))
            throw ValidationError("kenmotsu_residual: distance from the axis must be > 0");
    }
    // Differentiate only the smooth position samples; assemble
    // Z' = (x'' + i z'')/x - Z x'/x by the chain rule.
    const std::vector<double> x1 = num::deriv1_samples(x, h);
    const std::vector<double> z1 = num::deriv1_samples(z, h);
    const std::vector<double> x2 = num::deriv2_samples(x, h);
    const std::vector<double> z2 = num::deriv2_samples(z, h);

    double max_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> Z{x1[i] / x[i], z1[i] / x[i]};
        const std::complex<double> Zp =
            std::complex<double>{x2[i], z2[i]} / x[i] - Z * (x1[i] / x[i]);
        const double Us = surface.orientation * U_of_rho(x[i]);
        const std::complex<double> res = Zp - 2.0 * std::complex<double>{0.0, 1.0} * Us * Z +
                                         std::norm(Z);
        max_res = std::max(max_res, std::abs(res));
    }
    return max_res;
}

double verify_prescribed_U(const InvariantSurface& surface, const Profile& U_of_rho,
                           std::size_t n_samples) {
    const ParamSurface& p = surface.patch;
    const double h = std::min({1e-3 * p.domain_scale(), 0.1 * std::abs(p.u1 - p.u0),
                               0.1 * std::abs(p.v1 - p.v0)});
    const double margin = 2.5 * h;
    const std::vector<double> u = num::linspace(p.u0 + margin, p.u1 - margin, n_samples);
    const double vmid = 0.5 * (p.v0 + p.v1);

    double max_err = 0.0;
    for (double ui : u) {
        const CurvaturePair c = numeric_curvatures(p, ui, vmid, h);
        const double disc = std::max(0.0, c.H * c.H - c.K);
        const double err = std::abs(std::sqrt(disc) - U_of_rho(surface.gen_x(ui)));
        max_err = std::max(max_err, err);
    }
    return max_err;
}

}  // namespace gip
