#pragma once

#include <functional>

#include "gip/types.hpp"

namespace gip {

// Parametrized surface patch r(u,v) on a rectangle. The map must be C^2 on
// the interior and regular (x_u x x_v != 0) wherever it is probed.
struct ParamSurface {
    std::function<Vec3(double, double)> map;
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;

    double domain_scale() const;
    // 1e-4 of the larger domain extent; the default jet step.
    double default_step() const { return 1e-4 * domain_scale(); }
};

struct FundamentalForms {
    double g11 = 0, g12 = 0, g22 = 0;
    double h11 = 0, h12 = 0, h22 = 0;
};

struct CurvaturePair {
    double K = 0.0;  // Gaussian, 1/length^2
    double H = 0.0;  // mean, 1/length
};

struct CurveInvariants {
    double kappa = 0.0;
    double tau = 0.0;
    bool planar = false;  // set when |a' x a''| is below tolerance; tau reported as 0
};

// Norm of x_u x x_v below this triggers a degenerate-surface error.
inline constexpr double kRegularityTol = 1e-9;

// First and second fundamental forms from 4th-order central-difference jets
// of the map. Requires (u,v) interior with margin >= 2*step. Pass step <= 0
// to use the surface default.
FundamentalForms fundamental_forms(const ParamSurface& surface, double u, double v,
                                   double step = 0.0);

CurvaturePair curvatures_from_forms(const FundamentalForms& forms);

// Convenience composition used all over the tests and the verification code.
CurvaturePair numeric_curvatures(const ParamSurface& surface, double u, double v,
                                 double step = 0.0);

// -(hbar^2/2m)(H^2 - K); the attractive potential seen by a confined particle.
double gip_from_curvatures(const CurvaturePair& pair, const PhysicalConstants& c);

// Curvatures of the graph z = Z(x,y) via numeric jets of Z.
CurvaturePair graph_curvatures(const std::function<double(double, double)>& Z, double x, double y,
                               double step);

// kappa = |a' x a''| / |a'|^3, tau = <a', a'' x a'''> / |a' x a''|^2.
// Straight segments are flagged planar with tau = 0 instead of throwing.
CurveInvariants curve_invariants(const std::function<Vec3(double)>& alpha, double s, double step);

// One-parameter screw motion: rotate (q1,q2) by omega*t, advance q3 by
// pitch_unit*t. Satisfies the group law in t.
Vec3 apply_screw_motion(const Vec3& q, double t, double omega, double pitch_unit);

enum class Symmetry { translation, rotation, screw };

// A surface swept by a 1-parameter isometry group. Carries the orthogonal
// coordinates data the eigenproblem layer needs: ds^2 = du^2 + f^2(u) dv^2.
struct InvariantSurface {
    ParamSurface patch;
    Symmetry symmetry = Symmetry::translation;
    std::function<double(double)> metric_f;  // f(u)

    // Generating-curve samples in the (distance-from-axis, height) plane as
    // functions of arc length u; empty for classes that do not use them.
    std::function<double(double)> gen_x;
    std::function<double(double)> gen_z;

    // +1 or -1: orientation sign relating the construction's signed potential
    // to the prescribed non-negative one. Used by the residual checks.
    int orientation = 1;

    bool truncated = false;   // domain was cut at a feasibility boundary
    std::string note;         // human-readable feasibility/truncation note
};

}  // namespace gip
