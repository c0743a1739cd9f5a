#include "sngraph/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "sngraph/error.hpp"

namespace sngraph {
namespace {

// Next line with comments stripped that still has content. Returns false at EOF.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
}

void add_polygon(TriangleMesh& mesh, const std::vector<long long>& corners, std::size_t vertex_count,
                 const char* format) {
    if (corners.size() < 3) {
        throw MeshError(std::string(format) + ": face with fewer than 3 vertices");
    }
    for (const long long c : corners) {
        if (c < 0 || static_cast<std::size_t>(c) >= vertex_count) {
            throw MeshError(std::string(format) + ": face references vertex " + std::to_string(c) +
                            " but only " + std::to_string(vertex_count) + " vertices exist");
        }
    }
    for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        mesh.triangles.push_back({static_cast<std::uint32_t>(corners[0]),
                                  static_cast<std::uint32_t>(corners[k]),
                                  static_cast<std::uint32_t>(corners[k + 1])});
    }
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

}  // namespace

BoundingBox bounding_box(const TriangleMesh& mesh) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    BoundingBox box{{inf, inf, inf}, {-inf, -inf, -inf}};
    for (const Vec3& v : mesh.vertices) {
        for (int a = 0; a < 3; ++a) {
            box.min[a] = std::min(box.min[a], v[a]);
            box.max[a] = std::max(box.max[a], v[a]);
        }
    }
    return box;
}

TriangleMesh parse_off(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw MeshError("OFF: empty file");

    std::istringstream header(line);
    std::string magic;
    header >> magic;
    // ModelNet ships files whose counts are glued to the magic ("OFF490 518 0").
    if (magic.rfind("OFF", 0) != 0) throw MeshError("OFF: missing 'OFF' header");
    std::string rest = magic.substr(3);
    std::string tail;
    std::getline(header, tail);
    rest += " " + tail;
    if (rest.find_first_not_of(" \t\r\n") == std::string::npos) {
        if (!next_content_line(in, rest)) throw MeshError("OFF: missing counts line");
    }

    long long nv = -1, nf = -1;
    {
        std::istringstream counts(rest);
        if (!(counts >> nv >> nf) || nv < 0 || nf < 0) throw MeshError("OFF: malformed counts line");
    }

    TriangleMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        if (!next_content_line(in, line)) throw MeshError("OFF: truncated vertex list");
        std::istringstream ls(line);
        Vec3 v;
        if (!(ls >> v.x >> v.y >> v.z)) throw MeshError("OFF: malformed vertex line");
        mesh.vertices.push_back(v);
    }
    std::vector<long long> corners;
    for (long long f = 0; f < nf; ++f) {
        if (!next_content_line(in, line)) throw MeshError("OFF: truncated face list");
        std::istringstream ls(line);
        long long n = 0;
        if (!(ls >> n) || n < 0) throw MeshError("OFF: malformed face line");
        corners.assign(static_cast<std::size_t>(n), 0);
        for (auto& c : corners) {
            if (!(ls >> c)) throw MeshError("OFF: malformed face line");
        }
        add_polygon(mesh, corners, mesh.vertices.size(), "OFF");
    }
    if (mesh.triangles.empty()) throw MeshError("OFF: mesh has no triangles");
    return mesh;
}

TriangleMesh parse_obj(std::istream& in) {
    TriangleMesh mesh;
    std::string line;
    std::vector<long long> corners;
    while (next_content_line(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw MeshError("OBJ: malformed vertex record");
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            corners.clear();
            std::string token;
            while (ls >> token) {
                const std::string head = token.substr(0, token.find('/'));
                long long idx = 0;
                try {
                    idx = std::stoll(head);
                } catch (...) {
                    throw MeshError("OBJ: malformed face index '" + token + "'");
                }
                if (idx == 0) throw MeshError("OBJ: face index 0 is invalid");
                // Negative indices count back from the most recent vertex.
                corners.push_back(idx > 0 ? idx - 1 : static_cast<long long>(mesh.vertices.size()) + idx);
            }
            add_polygon(mesh, corners, mesh.vertices.size(), "OBJ");
        }
    }
    if (mesh.triangles.empty()) throw MeshError("OBJ: mesh has no triangles");
    return mesh;
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file " + path.string());
    const std::string ext = lower_extension(path);
    try {
        if (ext == ".off") return parse_off(in);
        if (ext == ".obj") return parse_obj(in);
    } catch (const MeshError& e) {
        throw MeshError(path.string() + ": " + e.what());
    }
    throw MeshError("unsupported mesh format '" + ext + "' for " + path.string());
}

TriangleMesh normalize_mesh(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) throw MeshError("cannot normalize a mesh without vertices");
    const BoundingBox box = bounding_box(mesh);
    const Vec3 extent = box.extent();
    const double longest = std::max({extent.x, extent.y, extent.z});
    if (!(longest > 0.0) || !std::isfinite(longest)) {
        throw MeshError("cannot normalize a degenerate mesh (zero bounding-box extent)");
    }
    const Vec3 center = box.center();

    constexpr double kFrameTolerance = 1e-12;
    if (std::abs(longest - 1.0) <= kFrameTolerance && std::abs(center.x) <= kFrameTolerance &&
        std::abs(center.y) <= kFrameTolerance && std::abs(center.z) <= kFrameTolerance) {
        return mesh;
    }

    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) {
        v = {(v.x - center.x) / longest, (v.y - center.y) / longest, (v.z - center.z) / longest};
    }
    return out;
}

void write_off(const TriangleMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write " + path.string());
    out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    out << std::setprecision(17);
    for (const Vec3& v : mesh.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace sngraph
