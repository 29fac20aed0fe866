#pragma once

#include <functional>
#include <vector>

#include "gip/helicoidal.hpp"
#include "gip/profile.hpp"
#include "gip/types.hpp"

namespace gip {

// Invariant-metric factor f(u) > 0 in ds^2 = du^2 + f^2(u) dv^2.
struct MetricProfile {
    std::function<double(double)> f;
    double u0 = 0.0;
    double u1 = 1.0;
};

struct EffectivePotential1D {
    std::vector<double> u;  // strictly increasing, uniform
    std::vector<double> V;
    double lambda_sep = 0.0;
    int m_chi = 0;
};

enum class BoundaryCondition { dirichlet, periodic };

// For periodic runs the grid nodes u_i = u_0 + i h cover one period of
// length n*h (the wrap node u_0 + n h is identified with u_0).
struct Spectrum {
    std::vector<double> u;
    std::vector<double> energies;                // ascending
    std::vector<std::vector<double>> states;     // states[k] on the u grid, sum |psi|^2 h = 1
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::vector<bool> bound;                     // energy < 0
};

// V(u) = -(hbar^2/2m)[f'^2/(4f^2) + f''/(2f) + H^2] + (hbar^2/2m) lambda/f^2,
// with f differentiated by central differences on the grid.
EffectivePotential1D effective_potential(const MetricProfile& f,
                                         const std::function<double(double)>& H,
                                         const PhysicalConstants& c, double lambda_sep,
                                         std::size_t n_points);

struct CylinderLevel {
    int n_u = 0;
    int n_v = 0;
    double energy = 0.0;
};

// E(n_u, n_v) = h^2 n_v^2 / (8 m L_v^2) + E_{kappa, n_u}, the second term from
// the 1D box with potential -hbar^2 kappa^2 / 8m under homogeneous (open) or
// periodic (closed) conditions. Closed sections admit n_u = 0 and the n_u-th
// entry reports the n_u-th distinct level of the doubly degenerate ladder.
std::vector<CylinderLevel> cylinder_spectrum(const Profile& kappa, double L_u, double L_v,
                                             bool closed, const PhysicalConstants& c, int n_max,
                                             std::size_t grid_points = 2001);

// Effective potential along the generating curve of a revolution surface,
// derived from the radius function x(u) alone (arc-length parametrization).
EffectivePotential1D revolution_effective(const MetricProfile& x, int m_chi,
                                          const PhysicalConstants& c, std::size_t n_points);

// Closed-form effective potential of a minimal helicoidal member.
EffectivePotential1D helicoidal_minimal_veff(const MinimalFamily& fam, int m_chi,
                                             const PhysicalConstants& c,
                                             const std::vector<double>& xi_grid);

// k_chi = m_chi * omega; the separation constant is its square.
double quantize_k_chi(int m_chi, double omega);

// Lowest n_states eigenpairs of -(hbar^2/2m) d^2/du^2 + V via bisection on
// the (cyclic) tridiagonal finite-difference Hamiltonian plus inverse
// iteration. Deterministic.
Spectrum solve_1d_eigen(const EffectivePotential1D& V, BoundaryCondition bc,
                        const PhysicalConstants& c, std::size_t n_states);

// Sufficient 1D condition: true when V <= 0 everywhere and its integral is
// negative. Sign-changing potentials return false.
bool bound_state_criterion(const EffectivePotential1D& V);

struct HelicoidMap {
    double scale = 1.0;          // xi = scale * xi_tilde + shift
    double shift = 0.0;
    double energy_factor = 1.0;  // helicoid-equation eigenvalue = factor * E
};

HelicoidMap map_to_helicoid(const MinimalFamily& fam);

}  // namespace gip
