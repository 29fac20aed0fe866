#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gip/geometry.hpp"

namespace gip {

// Triangulated surface sample with per-vertex curvature attributes.
// Vertices are welded by position (seams and poles collapse), so closed
// surfaces triangulate closed.
struct Mesh {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<double> gauss;      // K per vertex
    std::vector<double> mean;       // H per vertex
    std::vector<double> potential;  // geometry-induced potential per vertex
    std::vector<double> density;    // optional |psi|^2, empty when unused
    std::size_t skipped_degenerate = 0;
};

// Scalar field on the parameter rectangle, sampled per vertex when present.
using SurfaceScalar = std::function<double(double u, double v)>;

Mesh export_mesh(const ParamSurface& surface, std::size_t nu, std::size_t nv,
                 const PhysicalConstants& c, const SurfaceScalar& density = nullptr);

inline Mesh export_mesh(const InvariantSurface& surface, std::size_t nu, std::size_t nv,
                        const PhysicalConstants& c, const SurfaceScalar& density = nullptr) {
    return export_mesh(surface.patch, nu, nv, c, density);
}

// Wavefront OBJ (v/vn/f records); scalar attributes go to the sidecar CSV
// keyed by vertex index. All floats print with 17 significant digits.
void write_obj(const Mesh& mesh, const std::string& path);
void write_attribute_csv(const Mesh& mesh, const std::string& path);

// Writes text atomically (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace gip
