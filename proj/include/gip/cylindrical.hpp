#pragma once

#include "gip/curve.hpp"
#include "gip/geometry.hpp"
#include "gip/profile.hpp"

namespace gip {

// Prescribed mean curvature H(s) for a surface swept by translating a planar
// cross section along a unit axis with a_z != 0.
struct CylindricalSpec {
    Vec3 axis{0.0, 0.0, 1.0};
    Profile H;                  // prescribed mean curvature along arc length
    double t0 = 0.0, t1 = 1.0;  // extrusion extent
    Vec3 tangent0{1.0, 0.0, 0.0};

    void validate() const;
    // Constant angle between the axis and the initial tangent.
    double theta() const;
};

// kappa(s) = (2 sin^2(theta) / a_z) H(s): the planar cross-section curvature
// realizing the prescribed H. Signed; feed it to the planar closed form.
CurvatureProfile cross_section_from_mean_curvature(const CylindricalSpec& spec);

// X(s,t) = alpha(s) + t a for a planar (z = 0) cross section.
InvariantSurface extrude(const ReconstructedCurve& curve, const Vec3& axis, double t0, double t1);

// Max |H_numeric| vs |H_target| mismatch along the generating curve,
// relative to max(|H_target|, 1e-3). Uses the curvature oracle.
double verify_prescribed_H(const InvariantSurface& surface, const Profile& H_target);

// Endpoints within 1e-6 in position and tangent.
bool closed_section(const ReconstructedCurve& curve, double tol = 1e-6);

// Full pipeline: prescribed H -> planar cross section (closed form) ->
// extrusion along the axis.
InvariantSurface synthesize_cylindrical(const CylindricalSpec& spec, std::size_t n_samples);

}  // namespace gip
