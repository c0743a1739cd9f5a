#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "sngraph/geometry.hpp"

namespace sngraph {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
};

struct BoundingBox {
    Vec3 min;
    Vec3 max;

    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extent() const { return max - min; }
};

BoundingBox bounding_box(const TriangleMesh& mesh);

// Dispatches on the file extension (.off, .obj; case-insensitive). Polygons
// with more than three corners are fan-triangulated from their first vertex.
TriangleMesh load_mesh(const std::filesystem::path& path);

TriangleMesh parse_off(std::istream& in);
TriangleMesh parse_obj(std::istream& in);

// Centers the bounding box at the origin and scales uniformly so that the
// longest side is 1. Meshes already in that frame (within 1e-12) are returned
// unchanged, which makes the operation idempotent bit for bit.
TriangleMesh normalize_mesh(const TriangleMesh& mesh);

void write_off(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace sngraph
