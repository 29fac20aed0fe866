#include "gip/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

#include "gip/curve.hpp"
#include "gip/cylindrical.hpp"
#include "gip/geometry.hpp"
#include "gip/helicoidal.hpp"
#include "gip/mesh.hpp"
#include "gip/numerics.hpp"
#include "gip/profile.hpp"
#include "gip/revolution.hpp"
#include "gip/schrodinger.hpp"

namespace gip {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Context {
    const JobSpec& spec;
    const RunOptions& opts;
    PhysicalConstants constants;
    RunReport report;

    std::string out_path(const std::string& name) const {
        return (fs::path(opts.out_dir) / name).string();
    }

    void emit_text(const std::string& name, const std::string& content) {
        if (opts.verify_only) return;
        const std::string path = out_path(name);
        write_text_atomic(path, content);
        report.outputs.emplace_back(name, fnv1a64_file(path));
    }

    void emit_mesh(const std::string& name, const Mesh& mesh) {
        if (opts.verify_only) return;
        const std::string obj = out_path(name);
        write_obj(mesh, obj);
        report.outputs.emplace_back(name, fnv1a64_file(obj));
        const std::string attrs =
            (fs::path(name).stem().string()) + "_attrs.csv";
        write_attribute_csv(mesh, out_path(attrs));
        report.outputs.emplace_back(attrs, fnv1a64_file(out_path(attrs)));
        if (mesh.skipped_degenerate > 0)
            report.notes.push_back(name + ": skipped " +
                                   std::to_string(mesh.skipped_degenerate) +
                                   " degenerate triangles");
    }

    void metric(const std::string& name, double value) {
        report.metrics.emplace_back(name, value);
    }
};

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += fmt17(row[i]);
        }
        out += "\n";
    }
    return out;
}

Profile profile_from(const Context& ctx, const std::string& section, const std::string& key,
                     double lo, double hi, std::size_t samples) {
    return parse_profile(ctx.spec.get_string(section, key), lo, hi, samples);
}

// ---- curve mode ------------------------------------------------------------

void run_curve(Context& ctx) {
    const JobSpec& spec = ctx.spec;
    const double s0 = spec.get_number("curve", "s_min");
    const double s1 = spec.get_number("curve", "s_max");
    if (!(s1 > s0)) throw ValidationError("curve.s_max must exceed curve.s_min");
    const auto n = static_cast<std::size_t>(spec.get_integer_or("curve", "samples", 2001));

    CurvatureProfile prof;
    if (spec.has("curve", "kappa")) {
        prof.kappa = profile_from(ctx, "curve", "kappa", s0, s1, n);
    } else if (spec.has("curve", "potential")) {
        const Profile V = profile_from(ctx, "curve", "potential", s0, s1, n);
        prof = curvature_from_gip(V, ctx.constants);
    } else {
        throw ValidationError("curve: need either 'kappa' or 'potential'");
    }
    prof.tau = spec.has("curve", "tau") ? profile_from(ctx, "curve", "tau", s0, s1, n)
                                        : Profile::constant(0.0, s0, s1, n);

    bool planar_tau = true;
    for (double s : prof.tau.grid())
        if (std::abs(prof.tau(s)) > 1e-12) planar_tau = false;

    std::string method = spec.get_string_or("curve", "method", planar_tau ? "both" : "frenet");
    if (!planar_tau && method != "frenet")
        throw ValidationError("curve.method: nonzero torsion requires 'frenet'");

    const double step = (s1 - s0) / static_cast<double>(n - 1);
    ReconstructedCurve primary;
    if (method == "closed_form" || method == "both") {
        primary = planar_closed_form(prof.kappa, n);
    }
    if (method == "frenet" || method == "both") {
        const ReconstructedCurve frenet = integrate_frenet(prof, {}, {0, 0, 0}, step);
        if (method == "both") {
            double max_diff = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                max_diff = std::max(max_diff, (frenet.pos[i] - primary.pos[i]).norm());
            ctx.metric("routes_max_pointwise_diff", max_diff);
        } else {
            primary = frenet;
        }
    }

    // invariants oracle on the samples (stencil points are grid nodes)
    auto lookup = [&primary, s0, step](double s) {
        const auto i = static_cast<std::size_t>(std::llround((s - s0) / step));
        return primary.pos.at(i);
    };
    double kappa_err = 0.0, tau_err = 0.0;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = primary.s[i];
        double k_rec = std::numeric_limits<double>::quiet_NaN();
        double t_rec = std::numeric_limits<double>::quiet_NaN();
        if (i >= 3 && i + 3 < n) {
            const CurveInvariants inv = curve_invariants(lookup, s, step);
            k_rec = inv.kappa;
            t_rec = inv.tau;
            kappa_err = std::max(kappa_err, std::abs(inv.kappa - std::abs(prof.kappa(s))) /
                                                std::max(std::abs(prof.kappa(s)), 1e-2));
            if (!planar_tau)
                tau_err = std::max(tau_err, std::abs(inv.tau - prof.tau(s)) /
                                                std::max(std::abs(prof.tau(s)), 1e-2));
        }
        rows.push_back({s, primary.pos[i].x, primary.pos[i].y, primary.pos[i].z,
                        prof.kappa(s), k_rec, t_rec});
    }
    ctx.metric("kappa_max_rel_error", kappa_err);
    if (!planar_tau) ctx.metric("tau_max_rel_error", tau_err);

    ctx.emit_text(spec.get_string_or("output", "curve", "curve.csv"),
                  csv_table({"s", "x", "y", "z", "kappa_target", "kappa_recovered",
                             "tau_recovered"},
                            rows));
}

// ---- cylinder mode ---------------------------------------------------------

void run_cylinder(Context& ctx) {
    const JobSpec& spec = ctx.spec;
    const double s0 = spec.get_number("cylinder", "s_min");
    const double s1 = spec.get_number("cylinder", "s_max");
    const auto n = static_cast<std::size_t>(spec.get_integer_or("cylinder", "samples", 4001));

    CylindricalSpec cyl;
    cyl.H = profile_from(ctx, "cylinder", "H", s0, s1, n);
    if (spec.has("cylinder", "axis")) {
        const auto a = spec.get_numbers("cylinder", "axis");
        if (a.size() != 3) throw ValidationError("cylinder.axis: expected three components");
        cyl.axis = Vec3{a[0], a[1], a[2]}.normalized();
    }
    cyl.t0 = spec.get_number_or("cylinder", "t_min", 0.0);
    cyl.t1 = spec.get_number_or("cylinder", "t_max", 1.0);

    const InvariantSurface surf = synthesize_cylindrical(cyl, n);
    if (!surf.note.empty()) ctx.report.notes.push_back(surf.note);

    ctx.metric("H_max_rel_error", verify_prescribed_H(surf, cyl.H));
    double maxK = 0.0;
    const double h = 1e-3 * surf.patch.domain_scale();
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double s = surf.patch.u0 + frac * (surf.patch.u1 - surf.patch.u0);
        maxK = std::max(maxK, std::abs(numeric_curvatures(surf.patch, s,
                                                          0.5 * (cyl.t0 + cyl.t1), h).K));
    }
    ctx.metric("K_max_abs", maxK);

    const auto nu = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nu", 96));
    const auto nv = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nv", 24));
    if (!ctx.opts.verify_only) {
        const Mesh mesh = export_mesh(surf, nu, nv, ctx.constants);
        ctx.emit_mesh(spec.get_string_or("output", "mesh", "surface.obj"), mesh);
    }
}

// ---- revolve mode ----------------------------------------------------------

void run_revolve(Context& ctx) {
    const JobSpec& spec = ctx.spec;
    const double rlo = spec.get_number("revolve", "rho_min");
    const double rhi = spec.get_number("revolve", "rho_max");
    const auto n = static_cast<std::size_t>(spec.get_integer_or("revolve", "samples", 4097));

    RevolutionFamilyParams params;
    params.U = profile_from(ctx, "revolve", "U", rlo, rhi, n);
    params.a1 = spec.get_number_or("revolve", "a1", 0.0);
    params.a2 = spec.get_number_or("revolve", "a2", 0.0);
    params.rho0 = spec.get_number_or("revolve", "rho0", 0.5 * (rlo + rhi));
    params.sign_A = static_cast<int>(spec.get_integer_or("revolve", "sign_A", 1));
    params.sign_lambda = static_cast<int>(spec.get_integer_or("revolve", "sign_lambda", 1));

    const std::string axis = spec.get_string_or("revolve", "axis", "vertical");
    const std::vector<double> grid = num::linspace(rlo, rhi, n);

    InvariantSurface surf;
    std::vector<std::vector<double>> rows;
    if (axis == "vertical") {
        const GeneratingCurveRev curve = generating_curve_vertical(params, grid);
        if (!curve.note.empty()) ctx.report.notes.push_back(curve.note);
        surf = revolve_vertical(curve);
        for (std::size_t i = 0; i < curve.rho.size(); ++i)
            rows.push_back({curve.rho[i], curve.lambda[i], curve.A[i], curve.mask[i]});
    } else if (axis == "horizontal") {
        const HorizontalGeneratingCurve curve = generating_curve_horizontal(params, grid);
        if (!curve.note.empty()) ctx.report.notes.push_back(curve.note);
        surf = revolve_horizontal(curve);
        for (std::size_t i = 0; i < curve.rho.size(); ++i)
            rows.push_back({curve.rho[i], curve.q[i], curve.A[i], curve.mask[i]});
    } else {
        throw ValidationError("revolve.axis: expected 'vertical' or 'horizontal'");
    }

    ctx.metric("U_max_abs_error", verify_prescribed_U(surf, params.U));
    ctx.metric("kenmotsu_residual", kenmotsu_residual(surf, params.U));

    ctx.emit_text(spec.get_string_or("output", "profile", "generator.csv"),
                  csv_table({"rho", "height", "A", "mask"}, rows));
    const auto nu = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nu", 96));
    const auto nv = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nv", 96));
    if (!ctx.opts.verify_only)
        ctx.emit_mesh(spec.get_string_or("output", "mesh", "surface.obj"),
                      export_mesh(surf, nu, nv, ctx.constants));
}

// ---- helicoid mode ---------------------------------------------------------

void run_helicoid(Context& ctx) {
    const JobSpec& spec = ctx.spec;
    const double xlo = spec.get_number("helicoid", "xi_min");
    const double xhi = spec.get_number("helicoid", "xi_max");
    const auto n = static_cast<std::size_t>(spec.get_integer_or(
        "helicoid", "samples",
        std::max<long>(513, std::lround(2048.0 * (xhi - xlo)))));
    const std::vector<double> grid = num::linspace(xlo, xhi, n);

    const std::string kind = spec.get_string_or("helicoid", "kind", "minimal");
    HelicoidalSurface surf;
    BourFamily family;
    if (kind == "minimal") {
        MinimalFamily fam;
        fam.omega = spec.get_number("helicoid", "omega");
        fam.omega0 = spec.get_number("helicoid", "omega0");
        fam.omega1 = spec.get_number_or("helicoid", "omega1", 0.0);
        surf = minimal_surface_embedding(fam, grid);
        family = surf.family();
    } else if (kind == "bour") {
        family.U = profile_from(ctx, "helicoid", "U", xlo, xhi, n);
        family.omega = spec.get_number("helicoid", "omega");
        family.a = spec.get_number_or("helicoid", "a", 1.0);
        surf = bour_surface(family, grid);
    } else {
        throw ValidationError("helicoid.kind: expected 'minimal' or 'bour'");
    }

    // natural-metric residual over an interior sample
    const double chi1 = 2.0 * M_PI * std::abs(family.a);
    const ParamSurface patch = surf.patch(0.0, chi1);
    const double h = 1e-3 * patch.domain_scale();
    double metric_residual = 0.0, max_abs_h = 0.0;
    for (double frac : {0.12, 0.35, 0.5, 0.68, 0.88}) {
        const double xi = xlo + frac * (xhi - xlo);
        const FundamentalForms f = fundamental_forms(patch, xi, 0.5 * chi1, h);
        const double U2 = family.U(xi) * family.U(xi);
        metric_residual = std::max({metric_residual, std::abs(f.g11 - 1.0), std::abs(f.g12),
                                    std::abs(f.g22 - U2) / std::max(U2, 1.0)});
        max_abs_h = std::max(max_abs_h, std::abs(curvatures_from_forms(f).H));
    }
    ctx.metric("metric_max_residual", metric_residual);
    if (kind == "minimal") ctx.metric("mean_curvature_max_abs", max_abs_h);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); i += std::max<std::size_t>(1, grid.size() / 512)) {
        const double xi = grid[i];
        const HelicoidalCurvatures curv = helicoidal_curvatures(family, xi);
        rows.push_back({xi, surf.rho(xi), surf.lambda(xi), family.U(xi), curv.pair.K,
                        curv.pair.H});
    }
    ctx.emit_text(spec.get_string_or("output", "profile", "natural_profile.csv"),
                  csv_table({"xi", "rho", "lambda", "U", "K", "H"}, rows));

    const auto nu = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nu", 96));
    const auto nv = static_cast<std::size_t>(spec.get_integer_or("output", "mesh_nv", 96));
    if (!ctx.opts.verify_only) {
        ctx.emit_mesh(spec.get_string_or("output", "mesh", "surface.obj"),
                      export_mesh(surf.as_invariant(0.0, chi1), nu, nv, ctx.constants));
        if (spec.get_bool_or("helicoid", "enantiomorph", false)) {
            const HelicoidalSurface mirror = surf.enantiomorph();
            ctx.emit_mesh(spec.get_string_or("output", "mirror_mesh", "surface_mirror.obj"),
                          export_mesh(mirror.as_invariant(0.0, chi1), nu, nv, ctx.constants));
        }
    }
}

// ---- spectrum mode ---------------------------------------------------------

void run_spectrum(Context& ctx) {
    const JobSpec& spec = ctx.spec;
    const std::string surface = spec.get_string_or("spectrum", "surface", "helicoid");

    if (surface == "cylinder") {
        const double Lu = spec.get_number("spectrum", "L_u");
        const double Lv = spec.get_number("spectrum", "L_v");
        const bool closed = spec.get_bool_or("spectrum", "closed", false);
        const int n_max = static_cast<int>(spec.get_integer_or("spectrum", "n_max", 3));
        const auto pts = static_cast<std::size_t>(
            spec.get_integer_or("spectrum", "samples", 2001));
        const Profile kappa = profile_from(ctx, "spectrum", "kappa", 0.0, Lu, pts);
        const auto table = cylinder_spectrum(kappa, Lu, Lv, closed, ctx.constants, n_max, pts);
        std::vector<std::vector<double>> rows;
        for (const auto& lvl : table)
            rows.push_back({static_cast<double>(lvl.n_u), static_cast<double>(lvl.n_v),
                            lvl.energy});
        ctx.emit_text(spec.get_string_or("output", "spectrum", "spectrum.csv"),
                      csv_table({"n_u", "n_v", "energy"}, rows));
        return;
    }
    if (surface != "helicoid")
        throw ValidationError("spectrum.surface: expected 'helicoid' or 'cylinder'");

    MinimalFamily fam;
    fam.omega = spec.get_number("spectrum", "omega");
    fam.omega0 = spec.get_number("spectrum", "omega0");
    fam.omega1 = spec.get_number_or("spectrum", "omega1", 0.0);
    fam.validate();

    std::vector<long> m_list = spec.has("spectrum", "m_chi")
                                   ? spec.get_integers("spectrum", "m_chi")
                                   : std::vector<long>{0, 1, 2, 3};
    const auto n_states = static_cast<std::size_t>(
        spec.get_integer_or("spectrum", "n_states", 4));
    const double L = spec.get_number_or("spectrum", "box", 20.0 / std::abs(fam.omega));
    const auto pts = static_cast<std::size_t>(
        spec.get_integer_or("spectrum", "samples", 4001));

    struct SectorResult {
        Spectrum spectrum;
        double bound_drift = 0.0;
        bool criterion = false;
    };
    auto solve_sector = [&](long m) {
        const EffectivePotential1D V = helicoidal_minimal_veff(
            fam, static_cast<int>(m), ctx.constants, num::linspace(-L, L, pts));
        SectorResult r;
        r.spectrum = solve_1d_eigen(V, BoundaryCondition::dirichlet, ctx.constants, n_states);
        r.criterion = bound_state_criterion(V);
        if (!r.spectrum.energies.empty() && r.spectrum.energies[0] < 0.0) {
            // box-size doubling stability check for reported bound states
            const EffectivePotential1D V2 = helicoidal_minimal_veff(
                fam, static_cast<int>(m), ctx.constants,
                num::linspace(-2.0 * L, 2.0 * L, 2 * pts - 1));
            const Spectrum big =
                solve_1d_eigen(V2, BoundaryCondition::dirichlet, ctx.constants, 1);
            r.bound_drift = std::abs(big.energies[0] - r.spectrum.energies[0]);
        }
        return r;
    };

    std::vector<SectorResult> results(m_list.size());
    if (ctx.opts.threads > 1) {
        std::vector<std::future<SectorResult>> futs;
        futs.reserve(m_list.size());
        for (long m : m_list)
            futs.push_back(std::async(std::launch::async, solve_sector, m));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < m_list.size(); ++i) results[i] = solve_sector(m_list[i]);
    }

    std::vector<std::vector<double>> rows;
    double worst_drift = 0.0;
    for (std::size_t i = 0; i < m_list.size(); ++i) {
        const SectorResult& r = results[i];
        for (std::size_t k = 0; k < r.spectrum.energies.size(); ++k)
            rows.push_back({static_cast<double>(m_list[i]), static_cast<double>(k),
                            r.spectrum.energies[k], r.spectrum.bound[k] ? 1.0 : 0.0,
                            r.criterion ? 1.0 : 0.0});
        worst_drift = std::max(worst_drift, r.bound_drift);
        if (r.bound_drift > 1e-4)
            ctx.report.notes.push_back("m_chi=" + std::to_string(m_list[i]) +
                                       ": bound-state energy moved " +
                                       fmt17(r.bound_drift) +
                                       " under box doubling (box too small)");
    }
    ctx.metric("bound_state_box_drift", worst_drift);
    ctx.emit_text(
        spec.get_string_or("output", "spectrum", "spectrum.csv"),
        csv_table({"m_chi", "n", "energy", "bound", "criterion"}, rows));

    if (spec.has("output", "wavefunctions") && !ctx.opts.verify_only) {
        std::vector<std::string> header{"xi"};
        for (long m : m_list) header.push_back("psi0_m" + std::to_string(m));
        std::vector<std::vector<double>> wrows;
        const Spectrum& first = results.front().spectrum;
        for (std::size_t i = 0; i < first.u.size(); ++i) {
            std::vector<double> row{first.u[i]};
            for (const SectorResult& r : results) row.push_back(r.spectrum.states[0][i]);
            wrows.push_back(std::move(row));
        }
        ctx.emit_text(spec.get_string("output", "wavefunctions"), csv_table(header, wrows));
    }
}

void dispatch(Context& ctx);

// ---- verify mode -----------------------------------------------------------

void run_verify(Context& ctx) {
    const std::string target = ctx.spec.get_string("verify", "spec");
    const fs::path base = fs::path(ctx.spec.origin()).parent_path();
    const fs::path resolved = fs::path(target).is_absolute() ? fs::path(target)
                                                             : base / target;
    const JobSpec inner = JobSpec::parse_file(resolved.string());
    RunOptions opts = ctx.opts;
    opts.verify_only = true;

    Context sub{inner, opts, ctx.constants, {}};
    sub.report.mode = inner.mode();
    sub.report.spec_origin = inner.origin();
    dispatch(sub);

    ctx.report.notes.push_back("verified " + resolved.string() + " (mode " + inner.mode() +
                               ")");
    for (const auto& note : sub.report.notes) ctx.report.notes.push_back(note);
    for (const auto& [k, v] : sub.report.metrics) ctx.report.metrics.emplace_back(k, v);
}

void dispatch(Context& ctx) {
    const std::string mode = ctx.spec.mode();
    if (mode == "curve")
        run_curve(ctx);
    else if (mode == "cylinder")
        run_cylinder(ctx);
    else if (mode == "revolve")
        run_revolve(ctx);
    else if (mode == "helicoid")
        run_helicoid(ctx);
    else if (mode == "spectrum")
        run_spectrum(ctx);
    else if (mode == "verify")
        run_verify(ctx);
    else
        throw ValidationError("unknown mode '" + mode + "'");
}

PhysicalConstants resolve_constants(const JobSpec& spec, const RunOptions& opts,
                                    std::string& units_name) {
    units_name = opts.units_override.value_or(spec.get_string_or("", "units", "natural"));
    PhysicalConstants c;
    if (units_name == "natural") {
        c.hbar = spec.get_number_or("", "hbar", 1.0);
        c.mass = spec.get_number_or("", "mass", 1.0);
    } else if (units_name == "si") {
        c.hbar = spec.get_number_or("", "hbar", 1.054571817e-34);
        c.mass = spec.get_number_or("", "mass", 9.1093837015e-31);
    } else {
        throw ValidationError("units: expected 'natural' or 'si'");
    }
    c.validate();
    return c;
}

}  // namespace

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "gipsurf run report\n";
    out << "mode: " << mode << "\n";
    out << "spec: " << spec_origin << "\n";
    out << "status: " << status << "\n";
    out << "units: " << units << "\n";
    out << "input:\n";
    for (const auto& line : input_echo) out << "  " << line << "\n";
    out << "notes:\n";
    for (const auto& n : notes) out << "  - " << n << "\n";
    out << "metrics:\n";
    for (const auto& [k, v] : metrics) out << "  " << k << " = " << fmt17(v) << "\n";
    out << "outputs:\n";
    for (const auto& [name, sum] : outputs) out << "  " << name << " fnv1a64=" << hex64(sum)
                                                << "\n";
    out << "wall_clock_s: " << fmt17(wall_clock_s) << "\n";
    return out.str();
}

RunReport run_job(const JobSpec& spec, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();

    std::string units_name;
    const PhysicalConstants constants = resolve_constants(spec, opts, units_name);

    Context ctx{spec, opts, constants, {}};
    ctx.report.mode = spec.mode();
    ctx.report.spec_origin = spec.origin();
    ctx.report.units = units_name + " hbar=" + fmt17(constants.hbar) +
                       " mass=" + fmt17(constants.mass);
    ctx.report.input_echo = spec.echo();
    if (opts.verify_only) ctx.report.notes.push_back("verify-only: no data files written");

    if (!opts.verify_only) fs::create_directories(opts.out_dir);
    dispatch(ctx);

    ctx.report.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string report_name = spec.get_string_or("output", "report", "report.txt");
    fs::create_directories(opts.out_dir);
    write_text_atomic((fs::path(opts.out_dir) / report_name).string(),
                      ctx.report.to_text());
    return ctx.report;
}

}  // namespace gip
