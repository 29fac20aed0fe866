#include "gip/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include "gip/numerics.hpp"

namespace gip {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Mesh export_mesh(const ParamSurface& surface, std::size_t nu, std::size_t nv,
                 const PhysicalConstants& c, const SurfaceScalar& density) {
    if (nu < 2 || nv < 2) throw ValidationError("export_mesh: resolution must be >= 2x2");

    const std::vector<double> us = num::linspace(surface.u0, surface.u1, nu);
    const std::vector<double> vs = num::linspace(surface.v0, surface.v1, nv);
    const double h = std::min({1e-3 * surface.domain_scale(),
                               0.1 * std::abs(surface.u1 - surface.u0),
                               0.1 * std::abs(surface.v1 - surface.v0)});
    const double margin = 2.5 * h;

    // Weld by quantized position: grid seams and poles merge automatically.
    std::vector<Vec3> raw(nu * nv);
    double diag = 0.0;
    {
        Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                const Vec3 p = surface.map(us[i], vs[j]);
                raw[i * nv + j] = p;
                lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
                hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
            }
        diag = (hi - lo).norm();
    }
    const double q = std::max(1e-9 * diag, 1e-300);

    Mesh mesh;
    std::map<std::tuple<long long, long long, long long>, std::uint32_t> lookup;
    std::vector<std::uint32_t> vertex_of(nu * nv);
    std::vector<std::size_t> rep_i(0), rep_j(0);

    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const Vec3 p = raw[i * nv + j];
            const auto key = std::make_tuple(static_cast<long long>(std::llround(p.x / q)),
                                             static_cast<long long>(std::llround(p.y / q)),
                                             static_cast<long long>(std::llround(p.z / q)));
            auto it = lookup.find(key);
            if (it == lookup.end()) {
                const auto idx = static_cast<std::uint32_t>(mesh.positions.size());
                lookup.emplace(key, idx);
                mesh.positions.push_back(p);
                rep_i.push_back(i);
                rep_j.push_back(j);
                vertex_of[i * nv + j] = idx;
            } else {
                vertex_of[i * nv + j] = it->second;
            }
        }
    }

    // Per-vertex attributes from an interior probe next to the representative
    // grid point (keeps the jet stencil inside the domain and off poles).
    const std::size_t n_verts = mesh.positions.size();
    mesh.normals.resize(n_verts);
    mesh.gauss.resize(n_verts);
    mesh.mean.resize(n_verts);
    mesh.potential.resize(n_verts);
    if (density) mesh.density.resize(n_verts);
    for (std::size_t k = 0; k < n_verts; ++k) {
        const double u = std::clamp(us[rep_i[k]], surface.u0 + margin, surface.u1 - margin);
        const double v = std::clamp(vs[rep_j[k]], surface.v0 + margin, surface.v1 - margin);
        CurvaturePair pair{};
        Vec3 normal{0, 0, 1};
        try {
            const FundamentalForms f = fundamental_forms(surface, u, v, h);
            pair = curvatures_from_forms(f);
            auto du = [&](double t) { return surface.map(t, v); };
            auto dv = [&](double t) { return surface.map(u, t); };
            Vec3 ru{}, rv{};
            static const double c1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
            static const double o1[4] = {-2.0, -1.0, 1.0, 2.0};
            for (int kk = 0; kk < 4; ++kk) ru += c1[kk] * du(u + o1[kk] * h);
            for (int kk = 0; kk < 4; ++kk) rv += c1[kk] * dv(v + o1[kk] * h);
            normal = ru.cross(rv).normalized();
        } catch (const NumericError&) {
            // degenerate probe (pole); keep zero curvature attributes
        }
        mesh.normals[k] = normal;
        mesh.gauss[k] = pair.K;
        mesh.mean[k] = pair.H;
        mesh.potential[k] = gip_from_curvatures(pair, c);
        if (density) mesh.density[k] = density(us[rep_i[k]], vs[rep_j[k]]);
    }

    // Two triangles per quad; drop collapsed ones.
    const double area_tol = 1e-18 * diag * diag;
    auto emit = [&](std::uint32_t a, std::uint32_t b, std::uint32_t cidx) {
        if (a == b || b == cidx || a == cidx) {
            ++mesh.skipped_degenerate;
            return;
        }
        const Vec3 ab = mesh.positions[b] - mesh.positions[a];
        const Vec3 ac = mesh.positions[cidx] - mesh.positions[a];
        if (ab.cross(ac).norm() < area_tol) {
            ++mesh.skipped_degenerate;
            return;
        }
        mesh.triangles.push_back({a, b, cidx});
    };
    for (std::size_t i = 0; i + 1 < nu; ++i) {
        for (std::size_t j = 0; j + 1 < nv; ++j) {
            const std::uint32_t v00 = vertex_of[i * nv + j];
            const std::uint32_t v10 = vertex_of[(i + 1) * nv + j];
            const std::uint32_t v01 = vertex_of[i * nv + j + 1];
            const std::uint32_t v11 = vertex_of[(i + 1) * nv + j + 1];
            emit(v00, v10, v11);
            emit(v00, v11, v01);
        }
    }
    return mesh;
}

void write_obj(const Mesh& mesh, const std::string& path) {
    std::string out;
    out.reserve(mesh.positions.size() * 80);
    out += "# gipsurf mesh\n";
    for (const Vec3& p : mesh.positions)
        out += "v " + fmt17(p.x) + " " + fmt17(p.y) + " " + fmt17(p.z) + "\n";
    for (const Vec3& n : mesh.normals)
        out += "vn " + fmt17(n.x) + " " + fmt17(n.y) + " " + fmt17(n.z) + "\n";
    for (const auto& t : mesh.triangles) {
        out += "f";
        for (std::uint32_t idx : t) {
            const std::string si = std::to_string(idx + 1);
            out += " " + si + "//" + si;
        }
        out += "\n";
    }
    write_text_atomic(path, out);
}

void write_attribute_csv(const Mesh& mesh, const std::string& path) {
    std::string out = "vertex,K,H,V_gip";
    const bool with_density = !mesh.density.empty();
    if (with_density) out += ",psi2";
    out += "\n";
    for (std::size_t k = 0; k < mesh.positions.size(); ++k) {
        out += std::to_string(k) + "," + fmt17(mesh.gauss[k]) + "," + fmt17(mesh.mean[k]) +
               "," + fmt17(mesh.potential[k]);
        if (with_density) out += "," + fmt17(mesh.density[k]);
        out += "\n";
    }
    write_text_atomic(path, out);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw NumericError("write_text_atomic: cannot open " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw NumericError("write_text_atomic: short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("fnv1a64_file: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return fnv1a64(bytes);
}

}  // namespace gip
