#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gip/geometry.hpp"
#include "gip/numerics.hpp"
#include "gip/profile.hpp"

namespace gip {

// Metric profile U(xi) > 0 in natural parameters together with the two
// family constants. sign(omega) carries the chirality. Analytic derivatives
// are optional; finite differences fill in when absent.
struct BourFamily {
    std::function<double(double)> U;
    std::function<double(double)> dU;   // optional
    std::function<double(double)> ddU;  // optional
    double omega = 1.0;
    double a = 1.0;

    void validate() const;
    int chirality() const { return omega >= 0.0 ? +1 : -1; }
    double eval_dU(double xi) const;
    double eval_ddU(double xi) const;
    // a^2 U^2 [omega^2 - a^2 dU^2] - omega^2, the shared integrand radicand.
    double radicand(double xi) const;
};

// Minimal members: U^2 = (omega^2 xi^2 + 2 omega1 omega xi + omega0)/a^2
// with a = 1 and b = omega0 - omega1^2 >= 1.
struct MinimalFamily {
    double omega = 1.0;
    double omega0 = 1.0;
    double omega1 = 0.0;

    double b() const { return omega0 - omega1 * omega1; }
    void validate() const;
};

BourFamily minimal_profile(const MinimalFamily& fam);

// K(xi) = -b omega^2 / [(omega xi + omega1)^2 + b]^2 (always negative).
double minimal_gaussian(const MinimalFamily& fam, double xi);

struct HelicoidalCurvatures {
    CurvaturePair pair;
    bool h_singular = false;  // mean-curvature expression hit 0/0 (minimal member)
};

// K = -U''/U; H from the family constants with the screw-adapted normal.
HelicoidalCurvatures helicoidal_curvatures(const BourFamily& family, double xi);

// Natural-parameter change of variables for a generating graph lambda(rho)
// screw-rotated with pitch constant omega.
struct NaturalParameters {
    std::vector<double> xi;              // xi(rho), anchored 0 at the grid start
    std::vector<double> chi_correction;  // chi = phi + correction(rho)
};

NaturalParameters natural_parameters(const Profile& lambda_of_rho, double omega,
                                     const std::vector<double>& rho_grid);

// A helicoidal surface synthesized from its natural-parameter profile:
// rho(xi) closed-form, height and angle offsets by quadrature.
class HelicoidalSurface {
  public:
    HelicoidalSurface() = default;
    HelicoidalSurface(BourFamily family, double xi0, double xi1,
                      std::shared_ptr<num::CubicSpline> lambda,
                      std::shared_ptr<num::CubicSpline> phi_offset);

    const BourFamily& family() const { return family_; }
    double xi_min() const { return xi0_; }
    double xi_max() const { return xi1_; }

    double rho(double xi) const;
    double lambda(double xi) const;
    double phi(double xi, double chi) const;
    Vec3 position(double xi, double chi) const;

    // Embedding patch over (xi, chi). Default chi range covers one full turn.
    ParamSurface patch(double chi0, double chi1) const;
    InvariantSurface as_invariant(double chi0, double chi1) const;

    // Mirror surface: omega -> -omega, pointwise y -> -y of the embedding.
    HelicoidalSurface enantiomorph() const;

  private:
    BourFamily family_;
    double xi0_ = 0.0, xi1_ = 1.0;
    std::shared_ptr<num::CubicSpline> lambda_;      // null: lambda constant 0
    std::shared_ptr<num::CubicSpline> phi_offset_;  // null: no offset
};

// General synthesis for a prescribed positive profile; fails fast naming the
// violated feasibility constraint.
HelicoidalSurface bour_surface(const BourFamily& family, const std::vector<double>& xi_grid);

// Closed-form specialization for minimal members (quadratic profile).
HelicoidalSurface minimal_surface_embedding(const MinimalFamily& fam,
                                            const std::vector<double>& xi_grid);

}  // namespace gip
