#include "gip/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "gip/numerics.hpp"

namespace gip {

namespace {

// ---- symmetric (cyclic) tridiagonal eigensolver ----------------------------
//
// All matrices here are  diag[i]  on the diagonal and a constant  off  on the
// two adjacent diagonals; periodic problems add  off  in the two corners.

struct Operator1D {
    std::vector<double> diag;
    double off = 0.0;
    bool cyclic = false;
};

// Number of eigenvalues strictly below sigma (inertia of A - sigma I).
// Cyclic case: Haynsworth split, treating the last row/column as a border
// of the leading tridiagonal block.
int count_below(const Operator1D& op, double sigma) {
    const std::size_t n = op.diag.size();
    const double e2 = op.off * op.off;
    const double tiny = 1e-290;
    int cnt = 0;
    if (!op.cyclic) {
        double q = op.diag[0] - sigma;
        if (q < 0) ++cnt;
        for (std::size_t i = 1; i < n; ++i) {
            if (q == 0.0) q = tiny;
            q = op.diag[i] - sigma - e2 / q;
            if (q < 0) ++cnt;
        }
        return cnt;
    }
    // Leading (n-1) block pivots plus the border Schur complement.
    // Border column b has off in slots 0 (corner) and n-2 (sub-diagonal).
    double q = op.diag[0] - sigma;
    double w = op.off;  // L^{-1} b, slot 0
    double schur_sum = (q == 0.0) ? w * w / tiny : w * w / q;
    if (q < 0) ++cnt;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (q == 0.0) q = tiny;
        const double l = op.off / q;
        q = op.diag[i] - sigma - e2 / (q == 0.0 ? tiny : q);
        w = ((i + 2 == n) ? op.off : 0.0) - l * w;
        if (q == 0.0) q = tiny;
        schur_sum += w * w / q;
        if (q < 0) ++cnt;
    }
    const double schur = op.diag[n - 1] - sigma - schur_sum;
    if (schur < 0) ++cnt;
    return cnt;
}

// k-th (0-based) eigenvalue by bisection on the inertia count.
double eigenvalue_bisect(const Operator1D& op, int k) {
    double lo = op.diag[0], hi = op.diag[0];
    for (double d : op.diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::abs(op.off) + 1e-12;
    hi += 2.0 * std::abs(op.off) + 1e-12;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(op, mid) <= k)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(lo) + std::abs(hi)) +
                       1e-300)
            break;
    }
    return 0.5 * (lo + hi);
}

// Tridiagonal solve with partial pivoting (one extra superdiagonal of fill).
// sub/sup are the constant off value of the shifted operator.
std::vector<double> solve_shifted_tridiag(const std::vector<double>& diag, double off,
                                          double sigma, std::vector<double> rhs,
                                          double corner_adjust_first, double corner_adjust_last) {
    const std::size_t n = diag.size();
    std::vector<double> a(n, off), b(n), c(n, off), f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) b[i] = diag[i] - sigma;
    b[0] += corner_adjust_first;
    b[n - 1] += corner_adjust_last;
    a[0] = 0.0;
    c[n - 1] = 0.0;

    const double tiny = 1e-290;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(a[i + 1]) > std::abs(b[i])) {
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(f[i], c[i + 1]);
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (b[i] == 0.0) b[i] = tiny;
        const double m = a[i + 1] / b[i];
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * f[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (b[n - 1] == 0.0) b[n - 1] = tiny;
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / b[n - 1];
    if (n >= 2) x[n - 2] = (rhs[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    for (std::size_t j = n - 2; j-- > 0;)
        x[j] = (rhs[j] - c[j] * x[j + 1] - f[j] * x[j + 2]) / b[j];
    return x;
}

// Solve (A - sigma I) x = rhs for the cyclic operator via Sherman-Morrison:
// fold the corners into the diagonal and add back a rank-one correction.
std::vector<double> solve_shifted(const Operator1D& op, double sigma, std::vector<double> rhs) {
    if (!op.cyclic) return solve_shifted_tridiag(op.diag, op.off, sigma, std::move(rhs), 0.0, 0.0);
    const std::size_t n = op.diag.size();
    const double gamma = op.off;
    std::vector<double> u(n, 0.0);
    u[0] = 1.0;
    u[n - 1] = 1.0;
    std::vector<double> z =
        solve_shifted_tridiag(op.diag, op.off, sigma, std::move(rhs), -gamma, -gamma);
    std::vector<double> w = solve_shifted_tridiag(op.diag, op.off, sigma, u, -gamma, -gamma);
    const double uz = z[0] + z[n - 1];
    const double uw = w[0] + w[n - 1];
    const double factor = gamma * uz / (1.0 + gamma * uw);
    for (std::size_t i = 0; i < n; ++i) z[i] -= factor * w[i];
    return z;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> apply_op(const Operator1D& op, const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = op.diag[i] * v[i];
        if (i > 0) acc += op.off * v[i - 1];
        if (i + 1 < n) acc += op.off * v[i + 1];
        y[i] = acc;
    }
    if (op.cyclic) {
        y[0] += op.off * v[n - 1];
        y[n - 1] += op.off * v[0];
    }
    return y;
}

// Rayleigh quotient of a unit vector; quadratically accurate and exact
// inside degenerate eigenspaces, which the bisection count cannot resolve.
double rayleigh(const Operator1D& op, const std::vector<double>& v) {
    const std::vector<double> y = apply_op(op, v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * y[i];
        den += v[i] * v[i];
    }
    return num / den;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis,
                   const std::vector<double>& evals, double lambda, double cluster_tol) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (std::abs(evals[j] - lambda) > cluster_tol) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * basis[j][i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * basis[j][i];
    }
}

std::vector<double> deterministic_start(std::size_t n, std::uint64_t seed) {
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        v[i] = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
    return v;
}

std::vector<double> eigenvector_inverse_iteration(const Operator1D& op, double lambda,
                                                  const std::vector<std::vector<double>>& found,
                                                  const std::vector<double>& found_vals,
                                                  double cluster_tol, std::uint64_t seed) {
    double scale = 2.0 * std::abs(op.off);
    for (double d : op.diag) scale = std::max(scale, std::abs(d));
    double pert = 1e-13 * std::max(scale, 1.0);

    for (int attempt = 0; attempt < 8; ++attempt, pert *= 100.0) {
        std::vector<double> v = deterministic_start(op.diag.size(), seed + attempt);
        orthogonalize(v, found, found_vals, lambda, cluster_tol);
        double nv = norm2(v);
        if (!(nv > 0.0)) continue;
        for (double& x : v) x /= nv;

        bool ok = true;
        for (int it = 0; it < 5 && ok; ++it) {
            v = solve_shifted(op, lambda + pert, std::move(v));
            orthogonalize(v, found, found_vals, lambda, cluster_tol);
            nv = norm2(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) {
                ok = false;
                break;
            }
            for (double& x : v) x /= nv;
        }
        if (ok) return v;
    }
    throw NumericError("solve_1d_eigen: inverse iteration broke down");
}

}  // namespace

EffectivePotential1D effective_potential(const MetricProfile& f,
                                         const std::function<double(double)>& H,
                                         const PhysicalConstants& c, double lambda_sep,
                                         std::size_t n_points) {
    c.validate();
    if (!f.f) throw ValidationError("effective_potential: missing metric profile");
    if (n_points < 6) throw ValidationError("effective_potential: need >= 6 points");
    const std::vector<double> u = num::linspace(f.u0, f.u1, n_points);
    const double h = u[1] - u[0];

    std::vector<double> fs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        fs[i] = f.f(u[i]);
        if (!(fs[i] > 0.0)) throw ValidationError("effective_potential: f must be > 0");
    }
    const std::vector<double> f1 = num::deriv1_samples(fs, h);
    const std::vector<double> f2 = num::deriv2_samples(fs, h);

    EffectivePotential1D out;
    out.u = u;
    out.V.resize(n_points);
    out.lambda_sep = lambda_sep;
    const double pref = c.hbar2_over_2m();
    for (std::size_t i = 0; i < n_points; ++i) {
        const double Hi = H ? H(u[i]) : 0.0;
        const double geo = f1[i] * f1[i] / (4.0 * fs[i] * fs[i]) + f2[i] / (2.0 * fs[i]) +
                           Hi * Hi;
        out.V[i] = -pref * geo + pref * lambda_sep / (fs[i] * fs[i]);
    }
    return out;
}

std::vector<CylinderLevel> cylinder_spectrum(const Profile& kappa, double L_u, double L_v,
                                             bool closed, const PhysicalConstants& c, int n_max,
                                             std::size_t grid_points) {
    c.validate();
    if (!(L_u > 0.0) || !(L_v > 0.0))
        throw ValidationError("cylinder_spectrum: box lengths must be > 0");
    if (n_max < 1) throw ValidationError("cylinder_spectrum: n_max must be >= 1");

    EffectivePotential1D pot;
    if (closed) {
        pot.u.resize(grid_points);
        const double h = L_u / static_cast<double>(grid_points);
        for (std::size_t i = 0; i < grid_points; ++i) pot.u[i] = static_cast<double>(i) * h;
    } else {
        pot.u = num::linspace(0.0, L_u, grid_points);
    }
    pot.V.resize(pot.u.size());
    const double pref = c.hbar * c.hbar / (8.0 * c.mass);
    for (std::size_t i = 0; i < pot.u.size(); ++i) {
        const double k = kappa(std::min(std::max(pot.u[i], kappa.lo()), kappa.hi()));
        pot.V[i] = -pref * k * k;
    }

    const std::size_t want = closed ? static_cast<std::size_t>(2 * n_max)
                                    : static_cast<std::size_t>(n_max);
    const Spectrum sec = solve_1d_eigen(
        pot, closed ? BoundaryCondition::periodic : BoundaryCondition::dirichlet, c, want);

    // Transverse (translation-direction) box term. h_Planck = 2 pi hbar.
    const double hv = std::numbers::pi * std::numbers::pi * c.hbar * c.hbar /
                      (2.0 * c.mass * L_v * L_v);

    std::vector<CylinderLevel> table;
    const int nu_lo = closed ? 0 : 1;
    for (int nu = nu_lo; nu <= n_max; ++nu) {
        double e_section;
        if (closed)
            e_section = (nu == 0) ? sec.energies[0]
                                  : sec.energies[static_cast<std::size_t>(2 * nu - 1)];
        else
            e_section = sec.energies[static_cast<std::size_t>(nu - 1)];
        for (int nv = 1; nv <= n_max; ++nv)
            table.push_back({nu, nv, hv * nv * nv + e_section});
    }
    return table;
}

EffectivePotential1D revolution_effective(const MetricProfile& x, int m_chi,
                                          const PhysicalConstants& c, std::size_t n_points) {
    c.validate();
    if (!x.f) throw ValidationError("revolution_effective: missing radius profile");
    if (n_points < 6) throw ValidationError("revolution_effective: need >= 6 points");
    const std::vector<double> u = num::linspace(x.u0, x.u1, n_points);
    const double h = u[1] - u[0];

    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        xs[i] = x.f(u[i]);
        if (!(xs[i] > 0.0)) throw ValidationError("revolution_effective: x must be > 0");
    }
    const std::vector<double> x1 = num::deriv1_samples(xs, h);
    const std::vector<double> x2 = num::deriv2_samples(xs, h);

    EffectivePotential1D out;
    out.u = u;
    out.V.resize(n_points);
    out.m_chi = m_chi;
    out.lambda_sep = static_cast<double>(m_chi) * static_cast<double>(m_chi);
    const double pref = c.hbar2_over_2m();
    const double m2 = static_cast<double>(m_chi) * static_cast<double>(m_chi);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double zp2 = 1.0 - x1[i] * x1[i];
        if (zp2 <= 1e-12)
            throw NumericError("revolution_effective: |x'| reached 1; the generating curve "
                               "is not a graph over arc length here");
        const double Hrev = (zp2 - xs[i] * x2[i]) / (2.0 * xs[i] * std::sqrt(zp2));
        const double bracket =
            (x1[i] * x1[i] + 2.0 * xs[i] * x2[i] - 4.0 * m2) / (4.0 * xs[i] * xs[i]) +
            Hrev * Hrev;
        out.V[i] = -pref * bracket;
    }
    return out;
}

EffectivePotential1D helicoidal_minimal_veff(const MinimalFamily& fam, int m_chi,
                                             const PhysicalConstants& c,
                                             const std::vector<double>& xi_grid) {
    c.validate();
    fam.validate();
    if (xi_grid.size() < 6)
        throw ValidationError("helicoidal_minimal_veff: need >= 6 grid points");
    num::uniform_spacing(xi_grid);

    EffectivePotential1D out;
    out.u = xi_grid;
    out.V.resize(xi_grid.size());
    out.m_chi = m_chi;
    const double kchi = quantize_k_chi(m_chi, fam.omega);
    out.lambda_sep = kchi * kchi;

    const double b = fam.b();
    const double w2 = fam.omega * fam.omega;
    const double m2 = static_cast<double>(m_chi) * static_cast<double>(m_chi);
    const double pref = c.hbar2_over_2m() * w2 / 4.0;
    for (std::size_t i = 0; i < xi_grid.size(); ++i) {
        const double t = fam.omega * xi_grid[i] + fam.omega1;
        const double B = b + t * t;
        out.V[i] = -pref * (b / (B * B) + (1.0 - 4.0 * m2) / B);
    }
    return out;
}

double quantize_k_chi(int m_chi, double omega) { return static_cast<double>(m_chi) * omega; }

Spectrum solve_1d_eigen(const EffectivePotential1D& V, BoundaryCondition bc,
                        const PhysicalConstants& c, std::size_t n_states) {
    c.validate();
    const std::size_t n = V.u.size();
    if (n < 5 || V.V.size() != n)
        throw ValidationError("solve_1d_eigen: grid and values must match, n >= 5");
    const double h = num::uniform_spacing(V.u);
    if (n_states < 1 || n_states > n - 2)
        throw ValidationError("solve_1d_eigen: need 1 <= n_states <= grid size - 2");

    const double t = c.hbar * c.hbar / (2.0 * c.mass * h * h);
    Operator1D op;
    op.off = -t;
    op.cyclic = (bc == BoundaryCondition::periodic);
    if (op.cyclic) {
        op.diag.resize(n);
        for (std::size_t i = 0; i < n; ++i) op.diag[i] = 2.0 * t + V.V[i];
    } else {
        op.diag.resize(n - 2);
        for (std::size_t i = 0; i + 2 < n; ++i) op.diag[i] = 2.0 * t + V.V[i + 1];
    }

    Spectrum out;
    out.u = V.u;
    out.bc = bc;
    const double scale = 4.0 * t + *std::max_element(op.diag.begin(), op.diag.end()) -
                         *std::min_element(op.diag.begin(), op.diag.end());
    const double cluster_tol = std::max(1e-10 * scale, 1e-13);

    std::vector<std::vector<double>> raw_states;
    for (std::size_t k = 0; k < n_states; ++k) {
        const double lambda = eigenvalue_bisect(op, static_cast<int>(k));
        const std::vector<double> v = eigenvector_inverse_iteration(
            op, lambda, raw_states, out.energies, cluster_tol, k + 1);
        out.energies.push_back(rayleigh(op, v));
        raw_states.push_back(v);
    }

    // The polish can reorder members of a near-degenerate cluster.
    {
        std::vector<std::size_t> idx(n_states);
        for (std::size_t i = 0; i < n_states; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return out.energies[a] < out.energies[b];
        });
        std::vector<double> e_sorted(n_states);
        std::vector<std::vector<double>> s_sorted(n_states);
        for (std::size_t i = 0; i < n_states; ++i) {
            e_sorted[i] = out.energies[idx[i]];
            s_sorted[i] = std::move(raw_states[idx[i]]);
        }
        out.energies = std::move(e_sorted);
        raw_states = std::move(s_sorted);
    }

    for (std::size_t k = 0; k < n_states; ++k) {
        std::vector<double> full;
        if (op.cyclic) {
            full = raw_states[k];
        } else {
            full.assign(n, 0.0);
            for (std::size_t i = 0; i + 2 < n; ++i) full[i + 1] = raw_states[k][i];
        }
        double nrm = 0.0;
        for (double x : full) nrm += x * x * h;
        nrm = std::sqrt(nrm);
        for (double& x : full) x /= nrm;
        // Deterministic sign: make the first extremal entry positive.
        std::size_t imax = 0;
        for (std::size_t i = 0; i < full.size(); ++i)
            if (std::abs(full[i]) > std::abs(full[imax])) imax = i;
        if (full[imax] < 0.0)
            for (double& x : full) x = -x;
        out.states.push_back(std::move(full));
        out.bound.push_back(out.energies[k] < 0.0);
    }
    return out;
}

bool bound_state_criterion(const EffectivePotential1D& V) {
    if (V.u.size() < 5) throw ValidationError("bound_state_criterion: too few samples");
    const double h = num::uniform_spacing(V.u);
    for (double v : V.V)
        if (v > 0.0) return false;
    return num::integrate_simpson(V.V, h) < 0.0;
}

HelicoidMap map_to_helicoid(const MinimalFamily& fam) {
    fam.validate();
    HelicoidMap m;
    m.scale = std::sqrt(fam.b());
    m.shift = -fam.omega1 / fam.omega;
    m.energy_factor = fam.b();
    return m;
}

}  // namespace gip
