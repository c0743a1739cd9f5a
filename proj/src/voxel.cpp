#include "sngraph/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "sngraph/error.hpp"
#include "sngraph/parallel.hpp"

namespace sngraph {

VoxelGrid::VoxelGrid(int resolution) : resolution_(resolution) {
    if (resolution < 1) throw Error("voxel grid resolution must be positive");
    const auto r = static_cast<std::size_t>(resolution);
    occupancy_.assign(r * r * r, 0);
}

VoxelIndex VoxelGrid::unravel(std::size_t idx) const {
    const auto r = static_cast<std::size_t>(resolution_);
    return {static_cast<int>(idx % r), static_cast<int>((idx / r) % r), static_cast<int>(idx / (r * r))};
}

Vec3 VoxelGrid::center(int i, int j, int k) const {
    const double o = origin(), s = voxel_size();
    return {o + i * s, o + j * s, o + k * s};
}

std::size_t VoxelGrid::count_occupied() const {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

namespace {

// Separated along `axis` when the triangle's projection interval misses the
// box's projection interval; touching intervals are not separated.
bool separated_on(const Vec3& axis, const std::array<Vec3, 3>& tri, const Vec3& half) {
    const double p0 = dot(axis, tri[0]);
    const double p1 = dot(axis, tri[1]);
    const double p2 = dot(axis, tri[2]);
    const double lo = std::min({p0, p1, p2});
    const double hi = std::max({p0, p1, p2});
    const double r = half.x * std::abs(axis.x) + half.y * std::abs(axis.y) + half.z * std::abs(axis.z);
    return lo > r || hi < -r;
}

}  // namespace

bool triangle_box_overlap(const Vec3& box_center, const Vec3& half,
                          const std::array<Vec3, 3>& triangle) {
    const std::array<Vec3, 3> tri{triangle[0] - box_center, triangle[1] - box_center,
                                  triangle[2] - box_center};

    // Box face normals.
    for (int a = 0; a < 3; ++a) {
        const double lo = std::min({tri[0][a], tri[1][a], tri[2][a]});
        const double hi = std::max({tri[0][a], tri[1][a], tri[2][a]});
        if (lo > half[a] || hi < -half[a]) return false;
    }

    const std::array<Vec3, 3> edges{tri[1] - tri[0], tri[2] - tri[1], tri[0] - tri[2]};

    // Triangle plane.
    if (separated_on(cross(edges[0], edges[1]), tri, half)) return false;

    // Edge x box-axis cross products.
    static constexpr std::array<Vec3, 3> kAxes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (const Vec3& e : edges) {
        for (const Vec3& u : kAxes) {
            if (separated_on(cross(e, u), tri, half)) return false;
        }
    }
    return true;
}

VoxelGrid voxelize_surface(const TriangleMesh& mesh, int resolution, int threads) {
    if (resolution < 4) throw Error("voxel resolution must be at least 4");
    constexpr double kBoundsTolerance = 1e-6;
    for (const Vec3& v : mesh.vertices) {
        for (int a = 0; a < 3; ++a) {
            if (!(std::abs(v[a]) <= 0.5 + kBoundsTolerance)) {
                throw MeshError("mesh is not normalized: vertex outside [-0.5, 0.5]^3");
            }
        }
    }
    for (const auto& t : mesh.triangles) {
        for (const auto idx : t) {
            if (idx >= mesh.vertices.size()) throw MeshError("triangle index out of range");
        }
    }

    VoxelGrid grid(resolution);
    const double R = resolution;
    const double s = 1.0 / R;
    const Vec3 half{0.5 * s, 0.5 * s, 0.5 * s};

    struct CellRange {
        int lo[3];
        int hi[3];
    };
    auto cell_of = [&](double x) { return static_cast<int>(std::floor((x + 0.5) * R)); };
    std::vector<CellRange> ranges(mesh.triangles.size());
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a) {
            const double lo = std::min({mesh.vertices[tri[0]][a], mesh.vertices[tri[1]][a], mesh.vertices[tri[2]][a]});
            const double hi = std::max({mesh.vertices[tri[0]][a], mesh.vertices[tri[1]][a], mesh.vertices[tri[2]][a]});
            // One cell of slack on each side; the exact test decides.
            ranges[t].lo[a] = std::clamp(cell_of(lo) - 1, 0, resolution - 1);
            ranges[t].hi[a] = std::clamp(cell_of(hi) + 1, 0, resolution - 1);
        }
    }

    // Each worker owns a band of z-layers, so writes never collide.
    parallel_chunks(static_cast<std::size_t>(resolution), threads, [&](int, std::size_t z_begin, std::size_t z_end) {
        const int zb = static_cast<int>(z_begin);
        const int ze = static_cast<int>(z_end) - 1;
        for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
            const CellRange& cr = ranges[t];
            const int k0 = std::max(cr.lo[2], zb);
            const int k1 = std::min(cr.hi[2], ze);
            if (k0 > k1) continue;
            const auto& idx = mesh.triangles[t];
            const std::array<Vec3, 3> tri{mesh.vertices[idx[0]], mesh.vertices[idx[1]], mesh.vertices[idx[2]]};
            for (int k = k0; k <= k1; ++k) {
                for (int j = cr.lo[1]; j <= cr.hi[1]; ++j) {
                    for (int i = cr.lo[0]; i <= cr.hi[0]; ++i) {
                        const std::size_t li = grid.linear(i, j, k);
                        if (grid.occupied(li)) continue;
                        if (triangle_box_overlap(grid.center(i, j, k), half, tri)) grid.set(li, true);
                    }
                }
            }
        }
    });
    return grid;
}

VoxelGrid solidify(const VoxelGrid& surface) {
    const int R = surface.resolution();
    VoxelGrid out = surface;
    if (R == 0) return out;

    std::vector<std::uint8_t> exterior(surface.size(), 0);
    std::vector<std::size_t> stack;
    auto seed = [&](int i, int j, int k) {
        const std::size_t li = surface.linear(i, j, k);
        if (!surface.occupied(li) && !exterior[li]) {
            exterior[li] = 1;
            stack.push_back(li);
        }
    };
    for (int a = 0; a < R; ++a) {
        for (int b = 0; b < R; ++b) {
            seed(0, a, b);
            seed(R - 1, a, b);
            seed(a, 0, b);
            seed(a, R - 1, b);
            seed(a, b, 0);
            seed(a, b, R - 1);
        }
    }
    static constexpr int kSteps[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    while (!stack.empty()) {
        const std::size_t li = stack.back();
        stack.pop_back();
        const VoxelIndex v = surface.unravel(li);
        for (const auto& d : kSteps) {
            const int i = v[0] + d[0], j = v[1] + d[1], k = v[2] + d[2];
            if (surface.in_bounds(i, j, k)) seed(i, j, k);
        }
    }
    for (std::size_t li = 0; li < out.size(); ++li) out.set(li, exterior[li] == 0);
    return out;
}

namespace {

constexpr char kVoxelMagic[4] = {'S', 'N', 'V', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
    return v;
}

}  // namespace

void write_voxels(const VoxelGrid& grid, const std::filesystem::path& path) {
    std::string out(kVoxelMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(grid.resolution()));
    std::string bits((grid.size() + 7) / 8, '\0');
    for (std::size_t li = 0; li < grid.size(); ++li) {
        if (grid.occupied(li)) bits[li / 8] = static_cast<char>(bits[li / 8] | (1 << (li % 8)));
    }
    out += bits;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot write " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

VoxelGrid read_voxels(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open " + path.string());
    const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < 8 || std::memcmp(in.data(), kVoxelMagic, 4) != 0) throw FormatError("bad SNV1 magic");
    const std::uint32_t R = get_u32(in, 4);
    if (R == 0 || R > 4096) throw FormatError("bad SNV1 resolution");
    VoxelGrid grid(static_cast<int>(R));
    if (in.size() != 8 + (grid.size() + 7) / 8) throw FormatError("truncated SNV1 payload");
    for (std::size_t li = 0; li < grid.size(); ++li) {
        grid.set(li, (static_cast<unsigned char>(in[8 + li / 8]) >> (li % 8)) & 1);
    }
    return grid;
}

}  // namespace sngraph
