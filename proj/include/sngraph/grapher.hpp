#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sngraph/sampler.hpp"
#include "sngraph/sdf.hpp"

namespace sngraph {

struct GraphParams {
    int p = 10;          // samples per edge
    double t_d = 0.05;   // SDF below this counts as outside (normalized units)
    double t_p = 0.7;    // an edge survives while the outside fraction is below this
    int q = 6;           // degree cap for rule-3 edges

    void validate() const;
    bool operator==(const GraphParams&) const = default;
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;  // first < second

struct GraphMeta {
    std::string source;
    int resolution = 0;
    SamplerMethod sampler = SamplerMethod::NodeSphere;
    int requested_n = 0;
    int achieved_n = 0;

    bool operator==(const GraphMeta&) const = default;
};

struct SnGraph {
    std::vector<SphereNode> nodes;
    std::vector<Edge> edges;        // sorted, includes rule-4 edges
    std::vector<Edge> rule4_edges;  // sorted subset of edges
    GraphParams params;
    GraphMeta meta;

    std::vector<std::vector<std::uint32_t>> adjacency() const;
    bool is_rule4(const Edge& e) const;

    bool operator==(const SnGraph&) const = default;
};

// Rule 1: samples p points at t = (k + 0.5) / p along the segment, looks up the
// SDF of the containing voxel (samples off the grid count as outside) and
// keeps the edge iff the fraction with SDF < t_d is strictly below t_p.
bool edge_interior_test(const SphereNode& a, const SphereNode& b, const SdfGrid& sdf,
                        const GraphParams& params);

// Rule 2: the segment between nodes a and b does not enter any other node's
// sphere. A segment tangent to a sphere passes.
bool edge_sphere_clearance(std::size_t a, std::size_t b, const std::vector<SphereNode>& nodes);

// Rules 1-4: candidates pass rules 1 and 2, are accepted shortest first while
// both endpoints have degree < q, and any node left isolated is joined to its
// nearest neighbour (a rule-4 edge, exempt from the other rules).
SnGraph build_graph(const Selection& selection, const SdfGrid& sdf, const GraphParams& params,
                    int threads = 0);

}  // namespace sngraph
