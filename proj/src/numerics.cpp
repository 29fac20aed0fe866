#include "gip/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gip::num {

double deriv1(const Fn1& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double deriv2(const Fn1& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
           (12 * h * h);
}

double deriv3(const Fn1& f, double x, double h) {
    return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) + 8 * f(x + 2 * h) -
            f(x + 3 * h)) /
           (8 * h * h * h);
}

namespace {

// Fornberg weights for the m-th derivative at z from nodes xs[0..n-1].
std::vector<double> fornberg_weights(double z, const std::vector<double>& xs, int m) {
    const int n = static_cast<int>(xs.size());
    std::vector<std::vector<double>> w(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    w[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    w[i][k] = c1 * (k * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
                w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                w[j][k] = (c4 * w[j][k] - k * w[j][k - 1]) / c3;
            w[j][0] = c4 * w[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = w[i][m];
    return out;
}

// 6-point stencil derivative at node p (0..5) of a uniform stencil whose
// leftmost node is at x0; keeps 4th order near domain edges.
double stencil6(const Fn1& f, double x0, double h, int p, int order) {
    std::vector<double> xs(6);
    for (int j = 0; j < 6; ++j) xs[j] = static_cast<double>(j);
    const std::vector<double> w = fornberg_weights(static_cast<double>(p), xs, order);
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += w[j] * f(x0 + j * h);
    return acc / std::pow(h, order);
}

}  // namespace

double deriv1_clamped(const Fn1& f, double x, double h, double lo, double hi) {
    if (x - 2 * h >= lo && x + 2 * h <= hi) return deriv1(f, x, h);
    // Shift a 6-point stencil to fit inside the domain.
    double x0 = std::max(lo, std::min(x - 2 * h, hi - 5 * h));
    x0 = std::max(x0, lo);
    int p = static_cast<int>(std::lround((x - x0) / h));
    p = std::clamp(p, 0, 5);
    return stencil6(f, x - p * h, h, p, 1);
}

double deriv2_clamped(const Fn1& f, double x, double h, double lo, double hi) {
    if (x - 2 * h >= lo && x + 2 * h <= hi) return deriv2(f, x, h);
    double x0 = std::max(lo, std::min(x - 2 * h, hi - 5 * h));
    x0 = std::max(x0, lo);
    int p = static_cast<int>(std::lround((x - x0) / h));
    p = std::clamp(p, 0, 5);
    return stencil6(f, x - p * h, h, p, 2);
}

namespace {

std::vector<double> deriv_samples(const std::vector<double>& f, double h, int order) {
    const std::size_t n = f.size();
    if (n < 6) throw ValidationError("deriv_samples: need at least 6 samples");
    std::vector<double> out(n);
    std::vector<double> xs(6);
    for (int j = 0; j < 6; ++j) xs[j] = static_cast<double>(j);
    const double hp = std::pow(h, order);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t base;
        if (i < 2)
            base = 0;
        else if (i + 3 >= n)
            base = n - 6;
        else
            base = i - 2;  // central 5-point case sits inside the 6-point window
        const std::vector<double> w =
            fornberg_weights(static_cast<double>(i - base), xs, order);
        double acc = 0.0;
        for (int j = 0; j < 6; ++j) acc += w[j] * f[base + j];
        out[i] = acc / hp;
    }
    return out;
}

}  // namespace

std::vector<double> deriv1_samples(const std::vector<double>& f, double h) {
    return deriv_samples(f, h, 1);
}

std::vector<double> deriv2_samples(const std::vector<double>& f, double h) {
    return deriv_samples(f, h, 2);
}

std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw ValidationError("cumulative_simpson: need at least 3 samples");
    std::vector<double> F(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 0) {
            F[i] = F[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else if (i + 1 < n) {
            F[i] = F[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        } else {
            F[i] = F[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
        }
    }
    return F;
}

double integrate_simpson(const std::vector<double>& f, double h) {
    return cumulative_simpson(f, h).back();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw ValidationError("linspace: need n >= 2");
    std::vector<double> x(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + static_cast<double>(i) * h;
    x.back() = b;
    return x;
}

double uniform_spacing(const std::vector<double>& x) {
    if (x.size() < 2) throw ValidationError("uniform_spacing: need at least 2 points");
    const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    if (!(h > 0)) throw ValidationError("uniform_spacing: grid must be strictly increasing");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ValidationError("uniform_spacing: grid is not uniform");
    }
    return h;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 5 || y_.size() != n)
        throw ValidationError("CubicSpline: need >= 5 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw ValidationError("CubicSpline: abscissae must be strictly increasing");

    // Clamped spline: end slopes estimated from the data with one-sided
    // 5-point stencils, then the standard tridiagonal system for the second
    // derivatives m_i. Diagonally dominant, O(h^4) accurate throughout.
    std::vector<double> hgap(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) hgap[i] = x_[i + 1] - x_[i];

    auto end_slope = [&](bool left) {
        const std::size_t base = left ? 0 : n - 5;
        std::vector<double> xs(5);
        for (int j = 0; j < 5; ++j) xs[j] = x_[base + j];
        const std::vector<double> w = fornberg_weights(left ? x_[0] : x_[n - 1], xs, 1);
        double s = 0.0;
        for (int j = 0; j < 5; ++j) s += w[j] * y_[base + j];
        return s;
    };
    const double s0 = end_slope(true);
    const double sn = end_slope(false);

    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sub[i] = hgap[i - 1];
        diag[i] = 2.0 * (hgap[i - 1] + hgap[i]);
        sup[i] = hgap[i];
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hgap[i] - (y_[i] - y_[i - 1]) / hgap[i - 1]);
    }
    diag[0] = 2.0 * hgap[0];
    sup[0] = hgap[0];
    rhs[0] = 6.0 * ((y_[1] - y_[0]) / hgap[0] - s0);
    sub[n - 1] = hgap[n - 2];
    diag[n - 1] = 2.0 * hgap[n - 2];
    rhs[n - 1] = 6.0 * (sn - (y_[n - 1] - y_[n - 2]) / hgap[n - 2]);
    std::vector<double> m = solve_tridiagonal(sub, diag, sup, rhs);

    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        c_[i] = m[i] / 2.0;
        d_[i] = (m[i + 1] - m[i]) / (6.0 * hgap[i]);
        b_[i] = (y_[i + 1] - y_[i]) / hgap[i] - hgap[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
}

std::size_t CubicSpline::find_interval(double x) const {
    const double pad = 1e-9 * (x_.back() - x_.front());
    if (x < x_.front() - pad || x > x_.back() + pad)
        throw ValidationError("CubicSpline: evaluation outside the data range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
    if (i > 0) --i;
    if (i >= x_.size() - 1) i = x_.size() - 2;
    return i;
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = find_interval(x);
    const double t = x - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::deriv(double x) const {
    const std::size_t i = find_interval(x);
    const double t = x - x_[i];
    return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline::deriv2(double x) const {
    const std::size_t i = find_interval(x);
    const double t = x - x_[i];
    return 2.0 * c_[i] + 6.0 * t * d_[i];
}

double CubicSpline::invert(double y) const {
    const double ya = y_.front(), yb = y_.back();
    const bool increasing = yb > ya;
    const double lo = increasing ? ya : yb, hi = increasing ? yb : ya;
    const double pad = 1e-9 * (hi - lo);
    if (y < lo - pad || y > hi + pad)
        throw ValidationError("CubicSpline::invert: value outside the data range");
    if (y <= lo) return increasing ? x_.front() : x_.back();
    if (y >= hi) return increasing ? x_.back() : x_.front();

    // Bracket on the sample grid, then safeguarded Newton.
    std::size_t ilo = 0, ihi = x_.size() - 1;
    while (ihi - ilo > 1) {
        const std::size_t mid = (ilo + ihi) / 2;
        if ((y_[mid] < y) == increasing)
            ilo = mid;
        else
            ihi = mid;
    }
    double a = x_[ilo], b = x_[ihi];
    const double tol = 1e-18 * (x_.back() - x_.front());
    double x = 0.5 * (a + b);
    for (int iter = 0; iter < 200 &&
                       (b - a) > std::max(tol, 2e-16 * (std::abs(a) + std::abs(b)));
         ++iter) {
        const double fx = (*this)(x)-y;
        if (fx == 0.0) return x;
        if ((fx > 0.0) == increasing)
            b = x;
        else
            a = x;
        const double dfx = deriv(x);
        double xn = (dfx != 0.0) ? x - fx / dfx : 0.5 * (a + b);
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        x = xn;
    }
    return x;
}

std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n || sup.size() != n || rhs.size() != n)
        throw ValidationError("solve_tridiagonal: inconsistent sizes");
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw NumericError("solve_tridiagonal: zero pivot");
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw NumericError("solve_tridiagonal: zero pivot");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
    return x;
}

double brent(const Fn1& f, double a, double b, double xtol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw NumericError("brent: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m;
            e = m;
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

}  // namespace gip::num
