#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sngraph/voxel.hpp"

namespace sngraph {

// Signed distance per voxel in normalized units (voxel distance / R),
// positive inside. Distances run voxel center to voxel center.
class SdfGrid {
public:
    SdfGrid() = default;
    SdfGrid(int resolution, std::vector<float> values, bool empty_object);

    int resolution() const { return resolution_; }
    std::size_t size() const { return values_.size(); }
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

    float value(int i, int j, int k) const { return values_[linear(i, j, k)]; }
    float value(std::size_t idx) const { return values_[idx]; }
    const std::vector<float>& values() const { return values_; }

    // True when the source grid had no occupied voxel; every value is then -1.
    bool empty_object() const { return empty_object_; }
    std::size_t count_interior() const;

    bool operator==(const SdfGrid&) const = default;

private:
    int resolution_ = 0;
    std::vector<float> values_;
    bool empty_object_ = false;
};

inline constexpr std::int64_t kEdtInfinity = INT64_MAX / 4;

// Exact squared Euclidean distance transform (voxel units). For each voxel,
// returns the squared distance to the nearest voxel whose occupancy equals
// `site_value`, or kEdtInfinity if there is none. When site_value is false,
// the layer of cells just outside the grid also counts as empty, so interior
// voxels touching the grid boundary get finite depths.
std::vector<std::int64_t> squared_edt(const VoxelGrid& grid, bool site_value, int threads = 0);

// Interior voxels get +sqrt(d2)/R to the nearest empty voxel; empty voxels
// get -sqrt(d2)/R to the nearest occupied voxel.
SdfGrid compute_sdf(const VoxelGrid& solid, int threads = 0);

// "SNF1" | u32 R | R^3 little-endian f32, x-fastest.
void write_sdf(const SdfGrid& sdf, const std::filesystem::path& path);
SdfGrid read_sdf(const std::filesystem::path& path);

}  // namespace sngraph
