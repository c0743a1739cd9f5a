#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sngraph/sdf.hpp"

namespace sngraph {

// Candidate or selected sphere: centered on a voxel, radius = SDF there.
// Center and radius are always representable as f32.
struct SphereNode {
    Vec3 center;
    double radius = 0.0;
    VoxelIndex voxel{0, 0, 0};

    bool operator==(const SphereNode&) const = default;
};

enum class SamplerMethod { NodeSphere, Fss };

std::string_view to_string(SamplerMethod method);
SamplerMethod parse_sampler_method(std::string_view name);

struct Selection {
    std::vector<SphereNode> nodes;  // in selection order
    SamplerMethod method = SamplerMethod::NodeSphere;
    int requested_n = 0;
    int achieved_n = 0;
};

// Composite distance between an already selected sphere a and a candidate b:
// (|a - b| - r_a) + 2 r_b.
double node_distance(const SphereNode& selected, const SphereNode& candidate);

// Relative slack for "on the sphere surface". Centers and radii are f32
// roundings of lattice values, so a lattice point lying exactly on a sphere
// can land a few ulps either side of it. Distinct lattice distances differ by
// at least 2/R^2 relatively, far above this slack for R <= 1024.
inline constexpr double kSurfaceSlack = 1e-6;

// True when a point at `center_distance` from a sphere's center lies strictly
// outside it (global distance E - r > 0), surface points excluded.
bool outside_sphere(double center_distance, double radius);

// All interior voxels as spheres, in ascending linear index.
std::vector<SphereNode> interior_candidates(const SdfGrid& sdf);

// Index into `candidates` of the first node: largest radius, then nearest to
// the centroid of all candidate centers, then lowest position in the list.
std::size_t first_node_index(const std::vector<SphereNode>& candidates);

SphereNode select_first(const SdfGrid& sdf);

// Max-min selection over a candidate list (ascending linear index order
// gives the tie-breaking). NodeSphere uses node_distance and rejects any
// candidate whose center lies inside or on an already selected sphere; FSS
// uses the plain center distance. Stops early when nothing is admissible.
Selection select_from_candidates(const std::vector<SphereNode>& candidates, int n,
                                 SamplerMethod method, int threads = 0);

Selection select_spheres(const SdfGrid& sdf, int n, int threads = 0);
Selection select_fss(const SdfGrid& sdf, int n, int threads = 0);

}  // namespace sngraph
