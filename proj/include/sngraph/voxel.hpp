#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "sngraph/geometry.hpp"
#include "sngraph/mesh.hpp"

namespace sngraph {

inline constexpr int kDefaultResolution = 128;

using VoxelIndex = std::array<int, 3>;

// Cubic lattice over [-0.5, 0.5]^3. Cell (i,j,k) spans
// [-0.5 + i/R, -0.5 + (i+1)/R] per axis and its center is origin() + (i,j,k)/R.
// Linear indices are x-fastest.
class VoxelGrid {
public:
    VoxelGrid() = default;
    explicit VoxelGrid(int resolution);

    int resolution() const { return resolution_; }
    std::size_t size() const { return occupancy_.size(); }
    double voxel_size() const { return 1.0 / resolution_; }
    double origin() const { return -0.5 + 0.5 / resolution_; }

    std::size_t linear(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(resolution_) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(resolution_) * k);
    }
    VoxelIndex unravel(std::size_t idx) const;
    Vec3 center(int i, int j, int k) const;

    bool in_bounds(int i, int j, int k) const {
        return i >= 0 && j >= 0 && k >= 0 && i < resolution_ && j < resolution_ && k < resolution_;
    }

    bool occupied(int i, int j, int k) const { return occupancy_[linear(i, j, k)] != 0; }
    bool occupied(std::size_t idx) const { return occupancy_[idx] != 0; }
    void set(int i, int j, int k, bool value) { occupancy_[linear(i, j, k)] = value ? 1 : 0; }
    void set(std::size_t idx, bool value) { occupancy_[idx] = value ? 1 : 0; }

    std::size_t count_occupied() const;

    const std::vector<std::uint8_t>& data() const { return occupancy_; }
    std::vector<std::uint8_t>& data() { return occupancy_; }

    bool operator==(const VoxelGrid&) const = default;

private:
    int resolution_ = 0;
    std::vector<std::uint8_t> occupancy_;
};

// Conservative separating-axis test between a triangle and a closed box.
// Touching counts as overlap.
bool triangle_box_overlap(const Vec3& box_center, const Vec3& box_half_size,
                          const std::array<Vec3, 3>& triangle);

// Marks every cell whose closed cube intersects at least one triangle.
// Requires a normalized mesh (vertices within [-0.5, 0.5]^3 up to 1e-6) and
// resolution >= 4.
VoxelGrid voxelize_surface(const TriangleMesh& mesh, int resolution = kDefaultResolution, int threads = 0);

// Occupied = not reachable from the grid boundary through empty cells
// (6-connectivity). Sealed cavities become occupied.
VoxelGrid solidify(const VoxelGrid& surface);

// "SNV1" | u32 R | ceil(R^3/8) bytes, x-fastest, bit b of byte n is voxel 8n+b.
void write_voxels(const VoxelGrid& grid, const std::filesystem::path& path);
VoxelGrid read_voxels(const std::filesystem::path& path);

}  // namespace sngraph
