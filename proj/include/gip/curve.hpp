#pragma once

#include <vector>

#include "gip/geometry.hpp"
#include "gip/profile.hpp"
#include "gip/types.hpp"

namespace gip {

// Curvature/torsion pair prescribing a curve up to rigid motion. kappa may be
// signed when the profile feeds the planar closed form (counterclockwise
// positive); the Frenet integrator insists on kappa >= 0 at call time.
struct CurvatureProfile {
    Profile kappa;
    Profile tau;

    double s0() const { return kappa.lo(); }
    double s1() const { return kappa.hi(); }
    std::size_t samples() const { return kappa.samples(); }
};

struct FrenetFrame {
    Vec3 t{1, 0, 0};
    Vec3 n{0, 1, 0};
    Vec3 b{0, 0, 1};

    bool orthonormal(double tol = 1e-9) const;
};

struct ReconstructedCurve {
    std::vector<double> s;
    std::vector<Vec3> pos;
    std::vector<FrenetFrame> frames;

    bool planar(double tol = 1e-12) const;  // all |z| below tol
};

// kappa(s) = sqrt(-8 m V(s)) / hbar. Throws InfeasibleError if V > 0 anywhere
// on the profile grid (a curve cannot induce a positive potential).
CurvatureProfile curvature_from_gip(const Profile& V, const PhysicalConstants& c);

// Integrates the Frenet system t' = kappa n, n' = -kappa t + tau b,
// b' = -tau n and alpha' = t with classical RK4, re-orthonormalizing the
// frame after every step. step must divide the profile range.
ReconstructedCurve integrate_frenet(const CurvatureProfile& profile, const FrenetFrame& frame0,
                                    const Vec3& alpha0, double step);

struct PlanarStart {
    double x0 = 0.0;
    double y0 = 0.0;
    double heading = 0.0;  // initial tangent angle
};

// Closed-form planar reconstruction: theta(s) by quadrature of kappa, then
// x,y by quadrature of cos/sin(theta). kappa may be signed. Output has z = 0
// and the in-plane frame (n is the left normal, b = +z).
ReconstructedCurve planar_closed_form(const Profile& kappa, std::size_t n_samples,
                                      const PlanarStart& start = {});

}  // namespace gip
