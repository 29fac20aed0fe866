#pragma once

#include <string>
#include <vector>

#include "gip/geometry.hpp"
#include "gip/profile.hpp"

namespace gip {

// Two-constant family data for a prescribed sqrt(H^2 - K) = U(rho) >= 0.
// The two branch signs are independent flags, both defaulting to +.
struct RevolutionFamilyParams {
    Profile U;         // of rho, on rho > 0
    double a1 = 0.0;   // integration constant inside A
    double a2 = 0.0;   // height at rho0
    double rho0 = 1.0; // anchor point of both quadratures
    int sign_A = +1;
    int sign_lambda = +1;

    void validate() const;
};

// A(rho) = sign_A * (2 int_{rho0}^{rho} U(x)/x dx + a1) on the given grid.
std::vector<double> A_from_potential(const Profile& U, double rho0, double a1, int sign,
                                     const std::vector<double>& rho_grid);

// Generating curve of a vertical-axis surface of revolution, restricted to
// the maximal connected subgrid around rho0 where 1 - rho^2 A^2 stays
// positive. Height anchored as lambda(rho0) = a2.
struct GeneratingCurveRev {
    std::vector<double> rho;
    std::vector<double> lambda;
    std::vector<double> A;
    std::vector<double> mask;  // 1 - rho^2 A^2
    bool truncated_lo = false;
    bool truncated_hi = false;
    int orientation = 1;  // sign_A * sign_lambda
    std::string note;
};

GeneratingCurveRev generating_curve_vertical(const RevolutionFamilyParams& params,
                                             const std::vector<double>& rho_grid);

// Rotates the generating curve about the z axis; reparametrized by arc
// length u so the metric reads du^2 + x^2(u) dphi^2.
InvariantSurface revolve_vertical(const GeneratingCurveRev& curve);

// Same quadrature with the roles of height and axis coordinate exchanged:
// q(rho) for a curve rotated about the x axis. Requires A > 0 on the domain.
struct HorizontalGeneratingCurve {
    std::vector<double> rho;
    std::vector<double> q;
    std::vector<double> A;
    std::vector<double> mask;
    bool truncated_lo = false;
    bool truncated_hi = false;
    int orientation = 1;
    std::string note;
};

HorizontalGeneratingCurve generating_curve_horizontal(const RevolutionFamilyParams& params,
                                                      const std::vector<double>& rho_grid);

// Inverse of the synthesized q(rho): the radius as a function of the axis
// coordinate (q must be strictly monotone on the domain).
Profile rho_of_q(const HorizontalGeneratingCurve& curve);

// Rotates the graph (q, rho(q)) about the x axis; covers cylinders
// (rho constant) and spheres directly. The orientation sign of the induced
// potential is sampled numerically at the domain midpoint.
InvariantSurface revolve_horizontal(const Profile& rho_of_q);

InvariantSurface revolve_horizontal(const HorizontalGeneratingCurve& curve);

// Max modulus of Z' - 2i U Z + |Z|^2 along the generating curve, where
// Z = (x' + i z')/x in arc length and U carries the construction's
// orientation sign. U is a function of the distance from the axis.
double kenmotsu_residual(const InvariantSurface& surface, const Profile& U_of_rho);

// Max |sqrt(H^2-K) - U| over interior sample points (absolute error),
// using the numeric curvature oracle.
double verify_prescribed_U(const InvariantSurface& surface, const Profile& U_of_rho,
                           std::size_t n_samples = 129);

}  // namespace gip
