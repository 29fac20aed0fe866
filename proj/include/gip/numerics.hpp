#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gip/types.hpp"

namespace gip::num {

using Fn1 = std::function<double(double)>;

// ---- finite differences (4th-order central stencils) ----------------------

double deriv1(const Fn1& f, double x, double h);
double deriv2(const Fn1& f, double x, double h);
double deriv3(const Fn1& f, double x, double h);

// One-sided-capable variants: the stencil is shifted to stay inside [lo, hi].
double deriv1_clamped(const Fn1& f, double x, double h, double lo, double hi);
double deriv2_clamped(const Fn1& f, double x, double h, double lo, double hi);

// 4th-order derivatives of uniformly spaced samples; shifted 6-point
// stencils keep the order at the ends.
std::vector<double> deriv1_samples(const std::vector<double>& f, double h);
std::vector<double> deriv2_samples(const std::vector<double>& f, double h);

// ---- quadrature ------------------------------------------------------------

// Cumulative integral of samples f on a uniform grid with spacing h.
// Composite Simpson on pair panels, cubic half-panel rule at odd indices;
// result[i] = integral from x0 to x_i, result[0] = 0. O(h^4) everywhere.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h);

// Definite integral over the whole grid (last entry of the cumulative rule).
double integrate_simpson(const std::vector<double>& f, double h);

// ---- uniform grids ---------------------------------------------------------

std::vector<double> linspace(double a, double b, std::size_t n);

// Verifies the grid is uniform to relative 1e-9 and returns the spacing.
double uniform_spacing(const std::vector<double>& x);

// ---- cubic spline (not-a-knot) ---------------------------------------------

// Interpolates (x_i, y_i) on a strictly increasing grid; C^2 evaluation with
// analytic first/second derivatives. Evaluation outside [x0, xn] throws.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

    // Inverts a strictly monotone spline: finds x with s(x) = y.
    double invert(double y) const;

  private:
    std::size_t find_interval(double x) const;

    std::vector<double> x_, y_, b_, c_, d_;  // y + d1/d2/d3 coefficients
};

// ---- linear algebra helpers ------------------------------------------------

// Thomas algorithm for a general tridiagonal system (no pivoting; caller
// guarantees diagonal dominance or well-conditioned input).
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs);

// ---- root finding ----------------------------------------------------------

// Brent-style bracketing solve of f(x) = 0 on [a, b] (f(a), f(b) of opposite
// sign). Tolerance is absolute on x.
double brent(const Fn1& f, double a, double b, double xtol = 1e-14);

}  // namespace gip::num
