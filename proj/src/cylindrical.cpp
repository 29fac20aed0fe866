#include "gip/cylindrical.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "gip/numerics.hpp"

namespace gip {

void CylindricalSpec::validate() const {
    if (std::abs(axis.norm() - 1.0) > 1e-12)
        throw ValidationError("CylindricalSpec: axis must be a unit vector");
    if (std::abs(axis.z) <= 1e-9)
        throw InfeasibleError("CylindricalSpec: axis.z = 0 gives a non-regular surface");
    if (!H.valid()) throw ValidationError("CylindricalSpec: missing H profile");
    if (!(t1 > t0)) throw ValidationError("CylindricalSpec: extrusion extent must be positive");
    if (std::abs(tangent0.norm() - 1.0) > 1e-9 || std::abs(tangent0.z) > 1e-12)
        throw ValidationError("CylindricalSpec: tangent0 must be a unit vector in the z=0 plane");
    if (!(std::sin(theta()) > 1e-9))
        throw InfeasibleError("CylindricalSpec: axis parallel to the cross-section tangent");
}

double CylindricalSpec::theta() const {
    const double c = std::clamp(tangent0.dot(axis), -1.0, 1.0);
    return std::acos(c);
}

CurvatureProfile cross_section_from_mean_curvature(const CylindricalSpec& spec) {
    spec.validate();
    const double st = std::sin(spec.theta());
    const double factor = 2.0 * st * st / spec.axis.z;
    Profile kappa([H = spec.H, factor](double s) { return factor * H(s); }, spec.H.lo(),
                  spec.H.hi(), spec.H.samples());
    Profile tau = Profile::constant(0.0, spec.H.lo(), spec.H.hi(), spec.H.samples());
    return {kappa, tau};
}

InvariantSurface extrude(const ReconstructedCurve& curve, const Vec3& axis, double t0, double t1) {
    if (curve.s.size() < 4) throw ValidationError("extrude: curve has too few samples");
    if (!curve.planar(1e-9)) throw ValidationError("extrude: cross section must lie in z = 0");
    if (std::abs(axis.norm() - 1.0) > 1e-12)
        throw ValidationError("extrude: axis must be a unit vector");
    if (std::abs(axis.z) <= 1e-9)
        throw InfeasibleError("extrude: axis.z = 0 gives a non-regular surface");

    std::vector<double> xs(curve.s.size()), ys(curve.s.size());
    for (std::size_t i = 0; i < curve.s.size(); ++i) {
        xs[i] = curve.pos[i].x;
        ys[i] = curve.pos[i].y;
    }
    auto sx = std::make_shared<num::CubicSpline>(curve.s, xs);
    auto sy = std::make_shared<num::CubicSpline>(curve.s, ys);

    InvariantSurface surf;
    surf.symmetry = Symmetry::translation;
    surf.patch.map = [sx, sy, axis](double s, double t) {
        return Vec3{(*sx)(s), (*sy)(s), 0.0} + t * axis;
    };
    surf.patch.u0 = curve.s.front();
    surf.patch.u1 = curve.s.back();
    surf.patch.v0 = t0;
    surf.patch.v1 = t1;
    surf.metric_f = [](double) { return 1.0; };
    return surf;
}

double verify_prescribed_H(const InvariantSurface& surface, const Profile& H_target) {
    const ParamSurface& p = surface.patch;
    const double h = std::min({1e-3 * p.domain_scale(), 0.1 * std::abs(p.u1 - p.u0),
                               0.1 * std::abs(p.v1 - p.v0)});
    const double margin = 2.5 * h;
    const std::vector<double> s =
        num::linspace(p.u0 + margin, p.u1 - margin, 129);
    const double tmid = 0.5 * (p.v0 + p.v1);

    double max_err = 0.0;
    for (double si : s) {
        const CurvaturePair c = numeric_curvatures(p, si, tmid, h);
        const double target = std::abs(H_target(si));
        const double err = std::abs(std::abs(c.H) - target) / std::max(target, 1e-3);
        max_err = std::max(max_err, err);
    }
    return max_err;
}

InvariantSurface synthesize_cylindrical(const CylindricalSpec& spec, std::size_t n_samples) {
    const CurvatureProfile kappa = cross_section_from_mean_curvature(spec);
    const double heading = std::atan2(spec.tangent0.y, spec.tangent0.x);
    const ReconstructedCurve section =
        planar_closed_form(kappa.kappa, n_samples, {0.0, 0.0, heading});
    InvariantSurface surf = extrude(section, spec.axis, spec.t0, spec.t1);
    surf.note = closed_section(section) ? "closed cross section" : "open cross section";
    return surf;
}

bool closed_section(const ReconstructedCurve& curve, double tol) {
    if (curve.pos.size() < 2) return false;
    const bool pos_close = (curve.pos.back() - curve.pos.front()).norm() <= tol;
    const bool tan_close = (curve.frames.back().t - curve.frames.front().t).norm() <= tol;
    return pos_close && tan_close;
}

}  // namespace gip
