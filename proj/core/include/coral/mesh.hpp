#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coral/surface.hpp"
#include "coral/vec3.hpp"

namespace coral {

struct Rgb {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;
};

struct VertexAttributes {
    double K = 0.0;
    Rgb color;
    /// Parametrization is degenerate here; K holds the u -> 0+ limit.
    bool singular = false;
};

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<VertexAttributes> attributes; ///< parallel to vertices
    std::vector<std::array<std::uint32_t, 3>> triangles;
    bool wrap_v = false;
    int nu = 0;
    int nv = 0;
    double K_min = 0.0; ///< colour map anchor
    std::string description;

    std::size_t singular_count() const noexcept;
};

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Colour-map coordinate in [0, 1]: 0 at K >= 0 (white), 1 at K <= K_min (deep blue).
double colormap_coordinate(double K, double K_min) noexcept;

/// White at K = 0, linear to deep blue (0.05, 0.19, 0.57) at K_min.
Rgb curvature_color(double K, double K_min) noexcept;

/// Regular (nu + 1) x nv grid (wrapped) or (nu + 1) x (nv + 1) grid, two triangles per
/// cell, oriented along r_u x r_v. Wrapping welds v = lo and v = hi and requires a
/// v-periodic family with hi - lo = 2 pi.
Mesh tessellate(const SurfaceFamily& s, ParamRange u, ParamRange v, int nu, int nv, bool wrap_v);

/// OBJ with "v x y z r g b" vertex colours and 1-based faces.
std::string to_obj(const Mesh& mesh);
/// ASCII PLY with uchar colours and a float "quality" property carrying K.
std::string to_ply(const Mesh& mesh);

/// Throws IoError naming the path on failure.
void write_obj(const Mesh& mesh, const std::filesystem::path& path);
void write_ply(const Mesh& mesh, const std::filesystem::path& path);

struct MeshCounts {
    std::size_t vertices = 0;
    std::size_t faces = 0;
};

/// Element counts declared in a PLY header.
MeshCounts read_ply_counts(const std::filesystem::path& path);
/// Number of "v" and "f" records in an OBJ file.
MeshCounts read_obj_counts(const std::filesystem::path& path);

} // namespace coral
