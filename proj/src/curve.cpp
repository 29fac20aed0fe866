#include "gip/curve.hpp"

#include <cmath>

#include "gip/numerics.hpp"

namespace gip {

bool FrenetFrame::orthonormal(double tol) const {
    if (std::abs(t.norm() - 1.0) > tol) return false;
    if (std::abs(n.norm() - 1.0) > tol) return false;
    if (std::abs(b.norm() - 1.0) > tol) return false;
    if (std::abs(t.dot(n)) > tol) return false;
    if (std::abs(t.dot(b)) > tol) return false;
    if (std::abs(n.dot(b)) > tol) return false;
    return (b - t.cross(n)).norm() <= tol;
}

bool ReconstructedCurve::planar(double tol) const {
    for (const Vec3& p : pos)
        if (std::abs(p.z) > tol) return false;
    return true;
}

CurvatureProfile curvature_from_gip(const Profile& V, const PhysicalConstants& c) {
    c.validate();
    for (double s : V.grid()) {
        if (V(s) > 0.0)
            throw InfeasibleError("curvature_from_gip: V(s) > 0 at s=" + std::to_string(s) +
                                  "; a curve-induced potential is never positive");
    }
    const double coeff = 8.0 * c.mass / (c.hbar * c.hbar);
    Profile kappa([V, coeff](double s) { return std::sqrt(std::max(0.0, -coeff * V(s))); },
                  V.lo(), V.hi(), V.samples());
    return {kappa, Profile::constant(0.0, V.lo(), V.hi(), V.samples())};
}

namespace {

struct FrenetState {
    Vec3 t, n, b, a;
};

FrenetState rhs(const FrenetState& y, double kappa, double tau) {
    FrenetState d;
    d.t = kappa * y.n;
    d.n = -kappa * y.t + tau * y.b;
    d.b = -tau * y.n;
    d.a = y.t;
    return d;
}

FrenetState axpy(const FrenetState& y, const FrenetState& d, double h) {
    return {y.t + h * d.t, y.n + h * d.n, y.b + h * d.b, y.a + h * d.a};
}

void renormalize(FrenetState& y) {
    y.t = y.t.normalized();
    y.n = (y.n - y.t * y.n.dot(y.t)).normalized();
    y.b = y.t.cross(y.n);
}

}  // namespace

ReconstructedCurve integrate_frenet(const CurvatureProfile& profile, const FrenetFrame& frame0,
                                    const Vec3& alpha0, double step) {
    if (!frame0.orthonormal())
        throw ValidationError("integrate_frenet: initial frame is not orthonormal");
    if (!(step > 0.0)) throw ValidationError("integrate_frenet: step must be > 0");
    const double range = profile.s1() - profile.s0();
    const double n_real = range / step;
    const auto n_steps = static_cast<std::size_t>(std::llround(n_real));
    if (n_steps < 1 || std::abs(n_real - static_cast<double>(n_steps)) > 1e-9 * n_real)
        throw ValidationError("integrate_frenet: step must divide the s-range");

    for (double s : profile.kappa.grid()) {
        if (profile.kappa(s) < 0.0)
            throw ValidationError("integrate_frenet: kappa must be >= 0 (use the planar "
                                  "closed form for signed curvature)");
    }

    ReconstructedCurve out;
    out.s.reserve(n_steps + 1);
    out.pos.reserve(n_steps + 1);
    out.frames.reserve(n_steps + 1);

    FrenetState y{frame0.t, frame0.n, frame0.b, alpha0};
    const double s0 = profile.s0();
    auto record = [&](double s, const FrenetState& st) {
        out.s.push_back(s);
        out.pos.push_back(st.a);
        out.frames.push_back({st.t, st.n, st.b});
    };
    record(s0, y);

    for (std::size_t i = 0; i < n_steps; ++i) {
        const double s = s0 + static_cast<double>(i) * step;
        const double sm = s + 0.5 * step, se = s + step;
        const double k0 = profile.kappa(s), t0 = profile.tau(s);
        const double km = profile.kappa(sm), tm = profile.tau(sm);
        const double k1 = profile.kappa(se), t1 = profile.tau(se);

        const FrenetState f1 = rhs(y, k0, t0);
        const FrenetState f2 = rhs(axpy(y, f1, 0.5 * step), km, tm);
        const FrenetState f3 = rhs(axpy(y, f2, 0.5 * step), km, tm);
        const FrenetState f4 = rhs(axpy(y, f3, step), k1, t1);

        y.t += (step / 6.0) * (f1.t + 2.0 * f2.t + 2.0 * f3.t + f4.t);
        y.n += (step / 6.0) * (f1.n + 2.0 * f2.n + 2.0 * f3.n + f4.n);
        y.b += (step / 6.0) * (f1.b + 2.0 * f2.b + 2.0 * f3.b + f4.b);
        y.a += (step / 6.0) * (f1.a + 2.0 * f2.a + 2.0 * f3.a + f4.a);
        renormalize(y);
        record(se, y);
    }
    return out;
}

ReconstructedCurve planar_closed_form(const Profile& kappa, std::size_t n_samples,
                                      const PlanarStart& start) {
    if (n_samples < 5) throw ValidationError("planar_closed_form: need >= 5 samples");
    const std::vector<double> s = num::linspace(kappa.lo(), kappa.hi(), n_samples);
    const double h = s[1] - s[0];

    const std::vector<double> k = kappa.values_on(s);
    const std::vector<double> theta = num::cumulative_simpson(k, h);

    std::vector<double> ct(n_samples), st(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        ct[i] = std::cos(theta[i]);
        st[i] = std::sin(theta[i]);
    }
    const std::vector<double> S = num::cumulative_simpson(ct, h);
    std::vector<double> C = num::cumulative_simpson(st, h);
    for (double& v : C) v = -v;

    // Initial tangent (cos heading, sin heading) fixes the two constants.
    const double z1 = std::sin(start.heading);
    const double z2 = -std::cos(start.heading);

    ReconstructedCurve out;
    out.s = s;
    out.pos.resize(n_samples);
    out.frames.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        out.pos[i] = {z1 * C[i] - z2 * S[i] + start.x0, z1 * S[i] + z2 * C[i] + start.y0, 0.0};
        const double ang = start.heading + theta[i];
        const Vec3 t{std::cos(ang), std::sin(ang), 0.0};
        const Vec3 n{-std::sin(ang), std::cos(ang), 0.0};
        out.frames[i] = {t, n, Vec3{0.0, 0.0, 1.0}};
    }
    return out;
}

}  // namespace gip
