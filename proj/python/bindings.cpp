#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gip/curve.hpp"
#include "gip/cylindrical.hpp"
#include "gip/geometry.hpp"
#include "gip/helicoidal.hpp"
#include "gip/jobspec.hpp"
#include "gip/mesh.hpp"
#include "gip/numerics.hpp"
#include "gip/profile.hpp"
#include "gip/revolution.hpp"
#include "gip/runner.hpp"
#include "gip/schrodinger.hpp"

namespace py = pybind11;
using namespace gip;

namespace {

std::vector<double> to_vector(const py::array_t<double, py::array::c_style>& a) {
    const auto buf = a.request();
    if (buf.ndim != 1) throw ValidationError("expected a one-dimensional array");
    const auto* p = static_cast<const double*>(buf.ptr);
    return {p, p + buf.shape[0]};
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_array2(const std::vector<Vec3>& v) {
    py::array_t<double> out({static_cast<py::ssize_t>(v.size()), py::ssize_t(3)});
    auto r = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(v.size()); ++i) {
        r(i, 0) = v[i].x;
        r(i, 1) = v[i].y;
        r(i, 2) = v[i].z;
    }
    return out;
}

Profile profile_from_samples(const py::array_t<double, py::array::c_style>& values, double lo,
                             double hi) {
    const std::vector<double> y = to_vector(values);
    return Profile::from_samples(num::linspace(lo, hi, y.size()), y);
}

PhysicalConstants constants(double hbar, double mass) {
    PhysicalConstants c{hbar, mass};
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_gipsurf, m) {
    m.doc() = "curves and invariant surfaces with a prescribed geometry-induced potential";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def(
        "screw_motion",
        [](py::array_t<double> q, double t, double omega, double pitch_unit) {
            const auto v = to_vector(q);
            if (v.size() != 3) throw ValidationError("screw_motion: expected a 3-vector");
            const Vec3 r = apply_screw_motion({v[0], v[1], v[2]}, t, omega, pitch_unit);
            return py::make_tuple(r.x, r.y, r.z);
        },
        py::arg("q"), py::arg("t"), py::arg("omega"), py::arg("pitch_unit") = 1.0);

    m.def(
        "curvature_from_potential",
        [](py::array_t<double> V, double s0, double s1, double hbar, double mass) {
            const Profile prof = profile_from_samples(V, s0, s1);
            const CurvatureProfile k = curvature_from_gip(prof, constants(hbar, mass));
            return to_array(k.kappa.values_on(num::linspace(s0, s1, to_vector(V).size())));
        },
        py::arg("V"), py::arg("s0"), py::arg("s1"), py::arg("hbar") = 1.0,
        py::arg("mass") = 1.0);

    m.def(
        "reconstruct_curve",
        [](py::array_t<double> kappa, py::array_t<double> tau, double s0, double s1,
           const std::string& method) {
            const std::vector<double> kv = to_vector(kappa);
            const std::size_t n = kv.size();
            CurvatureProfile prof;
            prof.kappa = profile_from_samples(kappa, s0, s1);
            prof.tau = tau.size() ? profile_from_samples(tau, s0, s1)
                                  : Profile::constant(0.0, s0, s1, n);
            ReconstructedCurve c;
            if (method == "closed_form")
                c = planar_closed_form(prof.kappa, n);
            else if (method == "frenet")
                c = integrate_frenet(prof, {}, {0, 0, 0},
                                     (s1 - s0) / static_cast<double>(n - 1));
            else
                throw ValidationError("method: expected 'frenet' or 'closed_form'");
            py::dict out;
            out["s"] = to_array(c.s);
            out["points"] = to_array2(c.pos);
            return out;
        },
        py::arg("kappa"), py::arg("tau") = py::array_t<double>(), py::arg("s0") = 0.0,
        py::arg("s1") = 1.0, py::arg("method") = "frenet");

    m.def(
        "cylindrical_surface",
        [](py::array_t<double> H, double s0, double s1, double t0, double t1) {
            CylindricalSpec spec;
            spec.H = profile_from_samples(H, s0, s1);
            spec.t0 = t0;
            spec.t1 = t1;
            const InvariantSurface surf = synthesize_cylindrical(spec, to_vector(H).size());
            py::dict out;
            out["H_max_rel_error"] = verify_prescribed_H(surf, spec.H);
            return out;
        },
        py::arg("H"), py::arg("s0"), py::arg("s1"), py::arg("t0") = 0.0, py::arg("t1") = 1.0);

    m.def(
        "revolution_surface",
        [](py::array_t<double> U, double rho_min, double rho_max, double rho0, double a1,
           double a2, int sign_A, int sign_lambda, const std::string& axis) {
            RevolutionFamilyParams params;
            params.U = profile_from_samples(U, rho_min, rho_max);
            params.rho0 = rho0;
            params.a1 = a1;
            params.a2 = a2;
            params.sign_A = sign_A;
            params.sign_lambda = sign_lambda;
            const std::vector<double> grid =
                num::linspace(rho_min, rho_max, to_vector(U).size());

            py::dict out;
            InvariantSurface surf;
            if (axis == "vertical") {
                const GeneratingCurveRev c = generating_curve_vertical(params, grid);
                surf = revolve_vertical(c);
                out["rho"] = to_array(c.rho);
                out["height"] = to_array(c.lambda);
                out["truncated"] = c.truncated_lo || c.truncated_hi;
            } else if (axis == "horizontal") {
                const HorizontalGeneratingCurve c = generating_curve_horizontal(params, grid);
                surf = revolve_horizontal(c);
                out["rho"] = to_array(c.rho);
                out["height"] = to_array(c.q);
                out["truncated"] = c.truncated_lo || c.truncated_hi;
            } else {
                throw ValidationError("axis: expected 'vertical' or 'horizontal'");
            }
            out["U_max_abs_error"] = verify_prescribed_U(surf, params.U);
            out["kenmotsu_residual"] = kenmotsu_residual(surf, params.U);
            return out;
        },
        py::arg("U"), py::arg("rho_min"), py::arg("rho_max"), py::arg("rho0"),
        py::arg("a1") = 0.0, py::arg("a2") = 0.0, py::arg("sign_A") = 1,
        py::arg("sign_lambda") = 1, py::arg("axis") = "vertical");

    m.def(
        "minimal_surface",
        [](double omega, double omega0, double omega1, double xi_min, double xi_max,
           std::size_t samples) {
            const MinimalFamily fam{omega, omega0, omega1};
            const auto grid = num::linspace(xi_min, xi_max, samples);
            const HelicoidalSurface s = minimal_surface_embedding(fam, grid);
            py::dict out;
            std::vector<double> rho(samples), lam(samples), K(samples);
            for (std::size_t i = 0; i < samples; ++i) {
                rho[i] = s.rho(grid[i]);
                lam[i] = s.lambda(grid[i]);
                K[i] = minimal_gaussian(fam, grid[i]);
            }
            out["xi"] = to_array(grid);
            out["rho"] = to_array(rho);
            out["lambda"] = to_array(lam);
            out["K"] = to_array(K);
            out["b"] = fam.b();
            return out;
        },
        py::arg("omega"), py::arg("omega0"), py::arg("omega1") = 0.0, py::arg("xi_min") = -2.0,
        py::arg("xi_max") = 2.0, py::arg("samples") = 1025);

    m.def(
        "minimal_surface_mesh",
        [](double omega, double omega0, double omega1, double xi_min, double xi_max,
           std::size_t nu, std::size_t nv, bool mirrored) {
            const MinimalFamily fam{omega, omega0, omega1};
            const auto grid = num::linspace(xi_min, xi_max, 2049);
            HelicoidalSurface s = minimal_surface_embedding(fam, grid);
            if (mirrored) s = s.enantiomorph();
            const double chi1 = 2.0 * M_PI;
            const Mesh mesh = export_mesh(s.as_invariant(0.0, chi1), nu, nv, {});
            py::dict out;
            out["vertices"] = to_array2(mesh.positions);
            py::array_t<std::uint32_t> faces(
                {static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t(3)});
            auto f = faces.mutable_unchecked<2>();
            for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(mesh.triangles.size()); ++i)
                for (py::ssize_t j = 0; j < 3; ++j) f(i, j) = mesh.triangles[i][j];
            out["faces"] = faces;
            out["K"] = to_array(mesh.gauss);
            out["H"] = to_array(mesh.mean);
            return out;
        },
        py::arg("omega"), py::arg("omega0"), py::arg("omega1") = 0.0, py::arg("xi_min") = -2.0,
        py::arg("xi_max") = 2.0, py::arg("nu") = 48, py::arg("nv") = 48,
        py::arg("mirrored") = false);

    m.def(
        "minimal_veff",
        [](double omega, double omega0, double omega1, int m_chi, py::array_t<double> xi,
           double hbar, double mass) {
            const EffectivePotential1D V = helicoidal_minimal_veff(
                {omega, omega0, omega1}, m_chi, constants(hbar, mass), to_vector(xi));
            return to_array(V.V);
        },
        py::arg("omega"), py::arg("omega0"), py::arg("omega1"), py::arg("m_chi"),
        py::arg("xi"), py::arg("hbar") = 1.0, py::arg("mass") = 1.0);

    m.def("quantize_k_chi", &quantize_k_chi, py::arg("m_chi"), py::arg("omega"));

    m.def(
        "map_to_helicoid",
        [](double omega, double omega0, double omega1) {
            const HelicoidMap h = map_to_helicoid({omega, omega0, omega1});
            return py::make_tuple(h.scale, h.shift, h.energy_factor);
        },
        py::arg("omega"), py::arg("omega0"), py::arg("omega1") = 0.0);

    m.def(
        "solve_1d",
        [](py::array_t<double> u, py::array_t<double> V, const std::string& bc,
           std::size_t n_states, double hbar, double mass) {
            EffectivePotential1D pot;
            pot.u = to_vector(u);
            pot.V = to_vector(V);
            const BoundaryCondition kind = bc == "periodic" ? BoundaryCondition::periodic
                                                            : BoundaryCondition::dirichlet;
            const Spectrum sp = solve_1d_eigen(pot, kind, constants(hbar, mass), n_states);
            py::array_t<double> states(
                {static_cast<py::ssize_t>(sp.states.size()),
                 static_cast<py::ssize_t>(sp.u.size())});
            auto r = states.mutable_unchecked<2>();
            for (py::ssize_t k = 0; k < static_cast<py::ssize_t>(sp.states.size()); ++k)
                for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(sp.u.size()); ++i)
                    r(k, i) = sp.states[k][i];
            py::dict out;
            out["energies"] = to_array(sp.energies);
            out["states"] = states;
            out["bound"] = py::cast(sp.bound);
            return out;
        },
        py::arg("u"), py::arg("V"), py::arg("bc") = "dirichlet", py::arg("n_states") = 4,
        py::arg("hbar") = 1.0, py::arg("mass") = 1.0);

    m.def(
        "bound_state_criterion",
        [](py::array_t<double> u, py::array_t<double> V) {
            EffectivePotential1D pot;
            pot.u = to_vector(u);
            pot.V = to_vector(V);
            return bound_state_criterion(pot);
        },
        py::arg("u"), py::arg("V"));

    m.def(
        "cylinder_spectrum",
        [](py::array_t<double> kappa, double L_u, double L_v, bool closed, int n_max,
           std::size_t points, double hbar, double mass) {
            const Profile prof = profile_from_samples(kappa, 0.0, L_u);
            const auto table =
                cylinder_spectrum(prof, L_u, L_v, closed, constants(hbar, mass), n_max, points);
            py::array_t<double> out({static_cast<py::ssize_t>(table.size()), py::ssize_t(3)});
            auto r = out.mutable_unchecked<2>();
            for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(table.size()); ++i) {
                r(i, 0) = table[i].n_u;
                r(i, 1) = table[i].n_v;
                r(i, 2) = table[i].energy;
            }
            return out;
        },
        py::arg("kappa"), py::arg("L_u"), py::arg("L_v"), py::arg("closed") = false,
        py::arg("n_max") = 3, py::arg("points") = 2001, py::arg("hbar") = 1.0,
        py::arg("mass") = 1.0);

    m.def(
        "run_job",
        [](const std::string& spec_path, const std::string& out_dir, int threads,
           bool verify_only) {
            const JobSpec spec = JobSpec::parse_file(spec_path);
            RunOptions opts;
            opts.out_dir = out_dir;
            opts.threads = threads;
            opts.verify_only = verify_only;
            return run_job(spec, opts).to_text();
        },
        py::arg("spec_path"), py::arg("out_dir") = ".", py::arg("threads") = 1,
        py::arg("verify_only") = false);
}
