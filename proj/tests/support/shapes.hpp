#pragma once

// Test shapes: solid occupancy grids and closed triangle meshes.

#include <cmath>
#include <random>
#include <vector>

#include "sngraph/mesh.hpp"
#include "sngraph/voxel.hpp"

namespace sngraph::testing {

inline VoxelGrid ball_grid(int R, double cx, double cy, double cz, double radius) {
    VoxelGrid g(R);
    for (int k = 0; k < R; ++k)
        for (int j = 0; j < R; ++j)
            for (int i = 0; i < R; ++i) {
                const double dx = i - cx, dy = j - cy, dz = k - cz;
                if (dx * dx + dy * dy + dz * dz <= radius * radius) g.set(i, j, k, true);
            }
    return g;
}

inline void fill_box(VoxelGrid& g, int i0, int j0, int k0, int i1, int j1, int k1) {
    for (int k = k0; k <= k1; ++k)
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) g.set(i, j, k, true);
}

inline void fill_ball(VoxelGrid& g, double cx, double cy, double cz, double radius) {
    const int R = g.resolution();
    for (int k = 0; k < R; ++k)
        for (int j = 0; j < R; ++j)
            for (int i = 0; i < R; ++i) {
                const double dx = i - cx, dy = j - cy, dz = k - cz;
                if (dx * dx + dy * dy + dz * dz <= radius * radius) g.set(i, j, k, true);
            }
}

// Two radius-5 balls joined by a one-voxel bar along x, R = 32.
inline VoxelGrid dumbbell_grid() {
    VoxelGrid g(32);
    fill_ball(g, 8, 16, 16, 5);
    fill_ball(g, 23, 16, 16, 5);
    fill_box(g, 8, 16, 16, 23, 16, 16);
    return g;
}

// Independent Bernoulli occupancy.
inline VoxelGrid random_grid(std::mt19937& rng, int R, double density) {
    VoxelGrid g(R);
    std::bernoulli_distribution bit(density);
    for (std::size_t li = 0; li < g.size(); ++li) g.set(li, bit(rng));
    return g;
}

// Union of a few random balls and boxes kept away from the grid border.
inline VoxelGrid random_blob_grid(std::mt19937& rng, int R) {
    VoxelGrid g(R);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> pos(3.0, R - 4.0);
    std::uniform_real_distribution<double> rad(1.5, R / 5.0);
    std::bernoulli_distribution pick_box(0.4);
    const int parts = count(rng);
    for (int p = 0; p < parts; ++p) {
        const double cx = pos(rng), cy = pos(rng), cz = pos(rng), r = rad(rng);
        if (pick_box(rng)) {
            std::uniform_real_distribution<double> half(1.0, R / 4.0);
            const int hx = static_cast<int>(half(rng)), hy = static_cast<int>(half(rng)), hz = static_cast<int>(half(rng));
            auto clampi = [R](double v) { return std::max(1, std::min(R - 2, static_cast<int>(v))); };
            fill_box(g, clampi(cx - hx), clampi(cy - hy), clampi(cz - hz), clampi(cx + hx), clampi(cy + hy), clampi(cz + hz));
        } else {
            fill_ball(g, cx, cy, cz, r);
        }
    }
    return g;
}

// Closed box mesh with 12 outward triangles.
inline void append_box(TriangleMesh& m, Vec3 lo, Vec3 hi) {
    const auto base = static_cast<std::uint32_t>(m.vertices.size());
    for (int c = 0; c < 8; ++c) {
        m.vertices.push_back({(c & 1) ? hi.x : lo.x, (c & 2) ? hi.y : lo.y, (c & 4) ? hi.z : lo.z});
    }
    static constexpr std::uint32_t kFaces[12][3] = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                                                    {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
    for (const auto& f : kFaces) m.triangles.push_back({base + f[0], base + f[1], base + f[2]});
}

inline TriangleMesh box_mesh(Vec3 lo, Vec3 hi) {
    TriangleMesh m;
    append_box(m, lo, hi);
    return m;
}

// UV sphere.
inline TriangleMesh sphere_mesh(double radius = 1.0, int stacks = 24, int slices = 48) {
    TriangleMesh m;
    const double pi = std::acos(-1.0);
    m.vertices.push_back({0, 0, radius});
    for (int s = 1; s < stacks; ++s) {
        const double phi = pi * s / stacks;
        for (int l = 0; l < slices; ++l) {
            const double theta = 2 * pi * l / slices;
            m.vertices.push_back({radius * std::sin(phi) * std::cos(theta), radius * std::sin(phi) * std::sin(theta),
                                  radius * std::cos(phi)});
        }
    }
    m.vertices.push_back({0, 0, -radius});
    const auto south = static_cast<std::uint32_t>(m.vertices.size() - 1);
    auto ring = [&](int s, int l) { return static_cast<std::uint32_t>(1 + (s - 1) * slices + (l % slices)); };
    for (int l = 0; l < slices; ++l) m.triangles.push_back({0, ring(1, l), ring(1, l + 1)});
    for (int s = 1; s + 1 < stacks; ++s) {
        for (int l = 0; l < slices; ++l) {
            m.triangles.push_back({ring(s, l), ring(s + 1, l), ring(s + 1, l + 1)});
            m.triangles.push_back({ring(s, l), ring(s + 1, l + 1), ring(s, l + 1)});
        }
    }
    for (int l = 0; l < slices; ++l) m.triangles.push_back({ring(stacks - 1, l), south, ring(stacks - 1, l + 1)});
    return m;
}

// Boxy airplane: fuselage, wings, tailplane and fin as overlapping closed boxes.
inline TriangleMesh airplane_mesh() {
    TriangleMesh m;
    append_box(m, {-2.0, -0.18, -0.18}, {2.0, 0.18, 0.18});     // fuselage
    append_box(m, {-0.35, -1.8, -0.05}, {0.35, 1.8, 0.05});     // wings
    append_box(m, {-1.95, -0.7, -0.04}, {-1.55, 0.7, 0.04});    // tailplane
    append_box(m, {-1.95, -0.04, 0.0}, {-1.55, 0.04, 0.75});    // fin
    return m;
}

// Table: top slab and four legs.
inline TriangleMesh table_mesh() {
    TriangleMesh m;
    append_box(m, {-1.0, -0.6, 0.7}, {1.0, 0.6, 0.8});
    for (const double x : {-0.9, 0.8})
        for (const double y : {-0.5, 0.4}) append_box(m, {x, y, 0.0}, {x + 0.1, y + 0.1, 0.72});
    return m;
}

inline TriangleMesh torus_mesh(double major = 1.0, double minor = 0.35, int rings = 32, int sides = 16) {
    TriangleMesh m;
    const double pi = std::acos(-1.0);
    for (int a = 0; a < rings; ++a) {
        const double u = 2 * pi * a / rings;
        for (int b = 0; b < sides; ++b) {
            const double v = 2 * pi * b / sides;
            m.vertices.push_back({(major + minor * std::cos(v)) * std::cos(u), (major + minor * std::cos(v)) * std::sin(u),
                                  minor * std::sin(v)});
        }
    }
    auto id = [&](int a, int b) { return static_cast<std::uint32_t>((a % rings) * sides + (b % sides)); };
    for (int a = 0; a < rings; ++a)
        for (int b = 0; b < sides; ++b) {
            m.triangles.push_back({id(a, b), id(a + 1, b), id(a + 1, b + 1)});
            m.triangles.push_back({id(a, b), id(a + 1, b + 1), id(a, b + 1)});
        }
    return m;
}

}  // namespace sngraph::testing
