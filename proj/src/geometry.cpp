#include "gip/geometry.hpp"

#include <cmath>

#include "gip/numerics.hpp"

namespace gip {

double ParamSurface::domain_scale() const {
    return std::max(std::abs(u1 - u0), std::abs(v1 - v0));
}

namespace {

struct Jets {
    Vec3 ru, rv, ruu, ruv, rvv;
};

// 4th-order central differences of the map; the cross derivative nests the
// first-derivative stencil in both directions.
Jets surface_jets(const ParamSurface& s, double u, double v, double h) {
    static const double c1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    static const double o1[4] = {-2.0, -1.0, 1.0, 2.0};
    static const double c2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0,
                                 -1.0 / 12.0};
    static const double o2[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};

    Jets j{};
    for (int k = 0; k < 4; ++k) j.ru += c1[k] * s.map(u + o1[k] * h, v);
    for (int k = 0; k < 4; ++k) j.rv += c1[k] * s.map(u, v + o1[k] * h);
    j.ru = j.ru / h;
    j.rv = j.rv / h;
    for (int k = 0; k < 5; ++k) j.ruu += c2[k] * s.map(u + o2[k] * h, v);
    for (int k = 0; k < 5; ++k) j.rvv += c2[k] * s.map(u, v + o2[k] * h);
    j.ruu = j.ruu / (h * h);
    j.rvv = j.rvv / (h * h);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            j.ruv += (c1[a] * c1[b]) * s.map(u + o1[a] * h, v + o1[b] * h);
    j.ruv = j.ruv / (h * h);
    return j;
}

}  // namespace

FundamentalForms fundamental_forms(const ParamSurface& surface, double u, double v, double step) {
    const double h = step > 0.0 ? step : surface.default_step();
    if (!(h > 0.0)) throw ValidationError("fundamental_forms: step must be > 0");
    if (u - 2 * h < surface.u0 || u + 2 * h > surface.u1 || v - 2 * h < surface.v0 ||
        v + 2 * h > surface.v1)
        throw ValidationError("fundamental_forms: point too close to the domain boundary");

    const Jets j = surface_jets(surface, u, v, h);
    const Vec3 crossuv = j.ru.cross(j.rv);
    const double cn = crossuv.norm();
    if (cn < kRegularityTol)
        throw NumericError("fundamental_forms: degenerate surface (|x_u x x_v| < tol)");
    const Vec3 n = crossuv / cn;

    FundamentalForms f;
    f.g11 = j.ru.dot(j.ru);
    f.g12 = j.ru.dot(j.rv);
    f.g22 = j.rv.dot(j.rv);
    f.h11 = j.ruu.dot(n);
    f.h12 = j.ruv.dot(n);
    f.h22 = j.rvv.dot(n);
    return f;
}

CurvaturePair curvatures_from_forms(const FundamentalForms& f) {
    const double det = f.g11 * f.g22 - f.g12 * f.g12;
    if (!(det > 0.0))
        throw ValidationError("curvatures_from_forms: first form is not positive definite");
    CurvaturePair p;
    p.K = (f.h11 * f.h22 - f.h12 * f.h12) / det;
    p.H = (f.h11 * f.g22 - 2.0 * f.h12 * f.g12 + f.h22 * f.g11) / (2.0 * det);
    return p;
}

CurvaturePair numeric_curvatures(const ParamSurface& surface, double u, double v, double step) {
    return curvatures_from_forms(fundamental_forms(surface, u, v, step));
}

double gip_from_curvatures(const CurvaturePair& pair, const PhysicalConstants& c) {
    c.validate();
    return -c.hbar2_over_2m() * (pair.H * pair.H - pair.K);
}

CurvaturePair graph_curvatures(const std::function<double(double, double)>& Z, double x, double y,
                               double step) {
    if (!(step > 0.0)) throw ValidationError("graph_curvatures: step must be > 0");
    auto fx = [&](double t) { return Z(t, y); };
    auto fy = [&](double t) { return Z(x, t); };
    const double zx = num::deriv1(fx, x, step);
    const double zy = num::deriv1(fy, y, step);
    const double zxx = num::deriv2(fx, x, step);
    const double zyy = num::deriv2(fy, y, step);
    auto dZdx = [&](double t) {
        auto row = [&](double s) { return Z(s, t); };
        return num::deriv1(row, x, step);
    };
    const double zxy = num::deriv1(dZdx, y, step);

    const double w2 = 1.0 + zx * zx + zy * zy;
    CurvaturePair p;
    p.K = (zxx * zyy - zxy * zxy) / (w2 * w2);
    p.H = (zxx * (1.0 + zy * zy) - 2.0 * zxy * zx * zy + zyy * (1.0 + zx * zx)) /
          (2.0 * std::pow(w2, 1.5));
    return p;
}

CurveInvariants curve_invariants(const std::function<Vec3(double)>& alpha, double s, double step) {
    if (!(step > 0.0)) throw ValidationError("curve_invariants: step must be > 0");
    static const double c1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    static const double o1[4] = {-2.0, -1.0, 1.0, 2.0};
    static const double c2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0,
                                 -1.0 / 12.0};
    static const double o2[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    static const double c3[6] = {1.0 / 8.0, -1.0, 13.0 / 8.0, -13.0 / 8.0, 1.0, -1.0 / 8.0};
    static const double o3[6] = {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0};

    Vec3 d1{}, d2{}, d3{};
    for (int k = 0; k < 4; ++k) d1 += c1[k] * alpha(s + o1[k] * step);
    for (int k = 0; k < 5; ++k) d2 += c2[k] * alpha(s + o2[k] * step);
    for (int k = 0; k < 6; ++k) d3 += c3[k] * alpha(s + o3[k] * step);
    d1 = d1 / step;
    d2 = d2 / (step * step);
    d3 = d3 / (step * step * step);

    const double speed = d1.norm();
    if (!(speed > 0.0)) throw NumericError("curve_invariants: vanishing tangent");
    const Vec3 cr = d1.cross(d2);
    const double crn2 = cr.norm2();

    CurveInvariants inv;
    inv.kappa = std::sqrt(crn2) / (speed * speed * speed);
    if (crn2 < 1e-18) {
        inv.planar = true;  // straight within tolerance: torsion undefined
        inv.tau = 0.0;
    } else {
        inv.tau = d1.dot(d2.cross(d3)) / crn2;
        inv.planar = std::abs(inv.tau) < 1e-12;
    }
    return inv;
}

Vec3 apply_screw_motion(const Vec3& q, double t, double omega, double pitch_unit) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return {q.x * c + q.y * s, -q.x * s + q.y * c, q.z + pitch_unit * t};
}

}  // namespace gip
