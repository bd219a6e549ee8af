#include "coral/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "coral/diffgeo.hpp"
#include "coral/errors.hpp"
#include "coral/rounding.hpp"

namespace coral {
namespace {

constexpr Rgb kDeepBlue{0.05, 0.19, 0.57};
constexpr Rgb kWhite{1.0, 1.0, 1.0};

double singular_limit(const SurfaceFamily& s, double u, double v) {
    if (s.kind() != SurfaceKind::Lettuce && u == 0.0) {
        return coral_apex_curvature(s.n(), v);
    }
    // Not reached on the canonical families; fall back to a nearby regular sample.
    return gaussian_curvature(eval_jet(s, {u + 1e-6, v}));
}

std::string float_text(float x) {
    if (x == 0.0f) {
        x = 0.0f;
    }
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

int channel(double c) { return static_cast<int>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); }

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

} // namespace

std::size_t Mesh::singular_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(attributes.begin(), attributes.end(), [](const VertexAttributes& a) { return a.singular; }));
}

double colormap_coordinate(double K, double K_min) noexcept {
    if (!(K_min < 0.0) || !(K < 0.0)) {
        return 0.0;
    }
    return std::clamp(K / K_min, 0.0, 1.0);
}

Rgb curvature_color(double K, double K_min) noexcept {
    const double t = colormap_coordinate(K, K_min);
    return {kWhite.r + t * (kDeepBlue.r - kWhite.r), kWhite.g + t * (kDeepBlue.g - kWhite.g),
            kWhite.b + t * (kDeepBlue.b - kWhite.b)};
}

Mesh tessellate(const SurfaceFamily& s, ParamRange u, ParamRange v, int nu, int nv, bool wrap_v) {
    if (nu < 2 || nv < 2) {
        throw ParameterError("tessellation needs nu >= 2 and nv >= 2");
    }
    for (double x : {u.lo, u.hi, v.lo, v.hi}) {
        if (!std::isfinite(x)) {
            throw ParameterError("tessellation ranges must be finite");
        }
    }
    if (!(u.lo < u.hi) || !(v.lo < v.hi)) {
        throw ParameterError("tessellation ranges must satisfy lo < hi");
    }
    if (wrap_v) {
        if (!s.periodic_in_v()) {
            throw ParameterError(s.describe() + " is not periodic in v; cannot weld the seam");
        }
        if (std::abs((v.hi - v.lo) - kTwoPi) > 1e-12) {
            throw ParameterError("welding the v seam needs a v range of exactly 2 pi");
        }
    }
    const std::size_t rows = static_cast<std::size_t>(nu) + 1;
    const std::size_t cols = wrap_v ? static_cast<std::size_t>(nv) : static_cast<std::size_t>(nv) + 1;
    if (rows * cols > std::size_t{1} << 31) {
        throw ParameterError("tessellation too large");
    }

    Mesh mesh;
    mesh.wrap_v = wrap_v;
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.description = s.describe();
    mesh.vertices.reserve(rows * cols);
    mesh.attributes.reserve(rows * cols);

    for (std::size_t i = 0; i < rows; ++i) {
        const double uu = u.lo + (u.hi - u.lo) * static_cast<double>(i) / nu;
        for (std::size_t k = 0; k < cols; ++k) {
            const double vv = v.lo + (v.hi - v.lo) * static_cast<double>(k) / nv;
            const Jet2 j = eval_jet(s, {uu, vv});
            mesh.vertices.push_back(j.p);
            VertexAttributes a;
            if (is_regular(first_form(j))) {
                a.K = gaussian_curvature(j);
            } else {
                a.K = singular_limit(s, uu, vv);
                a.singular = true;
            }
            mesh.attributes.push_back(a);
        }
    }

    mesh.K_min = 0.0;
    for (const VertexAttributes& a : mesh.attributes) {
        mesh.K_min = std::min(mesh.K_min, a.K);
    }
    for (VertexAttributes& a : mesh.attributes) {
        a.color = curvature_color(a.K, mesh.K_min);
    }

    mesh.triangles.reserve(2 * static_cast<std::size_t>(nu) * nv);
    auto index = [&](std::size_t i, std::size_t k) {
        return static_cast<std::uint32_t>(i * cols + (wrap_v ? k % cols : k));
    };
    for (std::size_t i = 0; i < static_cast<std::size_t>(nu); ++i) {
        for (std::size_t k = 0; k < static_cast<std::size_t>(nv); ++k) {
            const std::uint32_t a = index(i, k);
            const std::uint32_t b = index(i + 1, k);
            const std::uint32_t c = index(i + 1, k + 1);
            const std::uint32_t d = index(i, k + 1);
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    return mesh;
}

std::string to_obj(const Mesh& mesh) {
    std::ostringstream os;
    os << "# coralgeom mesh: " << mesh.description << '\n';
    os << "# vertices " << mesh.vertices.size() << ", triangles " << mesh.triangles.size()
       << ", wrap_v " << (mesh.wrap_v ? "yes" : "no") << '\n';
    if (const std::size_t n = mesh.singular_count(); n > 0) {
        os << "# singular vertices " << n << " (K set to the u->0+ limit)\n";
    }
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& p = mesh.vertices[i];
        const Rgb& c = mesh.attributes[i].color;
        os << "v " << format_shortest(p.x) << ' ' << format_shortest(p.y) << ' ' << format_shortest(p.z)
           << ' ' << format_shortest(c.r) << ' ' << format_shortest(c.g) << ' ' << format_shortest(c.b)
           << '\n';
    }
    for (const auto& t : mesh.triangles) {
        os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
    return os.str();
}

std::string to_ply(const Mesh& mesh) {
    std::ostringstream os;
    os << "ply\n"
       << "format ascii 1.0\n"
       << "comment coralgeom mesh: " << mesh.description << '\n'
       << "comment quality = Gaussian curvature K (det II / det I)\n";
    if (const std::size_t n = mesh.singular_count(); n > 0) {
        os << "comment singular vertices " << n << ": parametrization degenerates, quality is the u->0+ limit\n";
    }
    os << "element vertex " << mesh.vertices.size() << '\n'
       << "property float x\n"
       << "property float y\n"
       << "property float z\n"
       << "property uchar red\n"
       << "property uchar green\n"
       << "property uchar blue\n"
       << "property float quality\n"
       << "element face " << mesh.triangles.size() << '\n'
       << "property list uchar int vertex_indices\n"
       << "end_header\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& p = mesh.vertices[i];
        const VertexAttributes& a = mesh.attributes[i];
        os << float_text(static_cast<float>(p.x)) << ' ' << float_text(static_cast<float>(p.y)) << ' '
           << float_text(static_cast<float>(p.z)) << ' ' << channel(a.color.r) << ' ' << channel(a.color.g)
           << ' ' << channel(a.color.b) << ' ' << float_text(static_cast<float>(a.K)) << '\n';
    }
    for (const auto& t : mesh.triangles) {
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    return os.str();
}

void write_obj(const Mesh& mesh, const std::filesystem::path& path) { write_text(to_obj(mesh), path); }

void write_ply(const Mesh& mesh, const std::filesystem::path& path) { write_text(to_ply(mesh), path); }

MeshCounts read_ply_counts(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line) || line != "ply") {
        throw IoError("'" + path.string() + "' is not a PLY file");
    }
    MeshCounts counts;
    while (std::getline(in, line) && line != "end_header") {
        std::istringstream ls(line);
        std::string keyword, element;
        std::size_t n = 0;
        if (ls >> keyword >> element >> n && keyword == "element") {
            if (element == "vertex") {
                counts.vertices = n;
            } else if (element == "face") {
                counts.faces = n;
            }
        }
    }
    if (line != "end_header") {
        throw IoError("'" + path.string() + "' has no end_header");
    }
    return counts;
}

MeshCounts read_obj_counts(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    MeshCounts counts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.starts_with("v ")) {
            ++counts.vertices;
        } else if (line.starts_with("f ")) {
            ++counts.faces;
        }
    }
    return counts;
}

} // namespace coral
