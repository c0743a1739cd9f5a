#include "sngraph/grapher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sngraph/error.hpp"
#include "sngraph/parallel.hpp"

namespace sngraph {

void GraphParams::validate() const {
    if (p < 2) throw Error("graph parameter p must be at least 2");
    if (!(t_p > 0.0 && t_p <= 1.0)) throw Error("graph parameter t_p must lie in (0, 1]");
    if (q < 1) throw Error("graph parameter q must be at least 1");
    if (!std::isfinite(t_d)) throw Error("graph parameter t_d must be finite");
}

std::vector<std::vector<std::uint32_t>> SnGraph::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(nodes.size());
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

bool SnGraph::is_rule4(const Edge& e) const {
    return std::binary_search(rule4_edges.begin(), rule4_edges.end(), e);
}

bool edge_interior_test(const SphereNode& a, const SphereNode& b, const SdfGrid& sdf, const GraphParams& params) {
    const int R = sdf.resolution();
    const Vec3 d = b.center - a.center;
    int outside = 0;
    for (int k = 0; k < params.p; ++k) {
        const double t = (k + 0.5) / params.p;
        const Vec3 pt = a.center + d * t;
        const int i = static_cast<int>(std::floor((pt.x + 0.5) * R));
        const int j = static_cast<int>(std::floor((pt.y + 0.5) * R));
        const int l = static_cast<int>(std::floor((pt.z + 0.5) * R));
        if (!sdf.in_bounds(i, j, l) || sdf.value(i, j, l) < params.t_d) ++outside;
    }
    const double fraction = static_cast<double>(outside) / params.p;
    return fraction < params.t_p;
}

bool edge_sphere_clearance(std::size_t a, std::size_t b, const std::vector<SphereNode>& nodes) {
    const Vec3& pa = nodes[a].center;
    const Vec3& pb = nodes[b].center;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
        if (c == a || c == b) continue;
        const double r = nodes[c].radius;
        // Tangent segments pass; see kSurfaceSlack for the rounding margin.
        const double limit = r * (1.0 - kSurfaceSlack);
        if (squared_point_segment_distance(nodes[c].center, pa, pb) < limit * limit) return false;
    }
    return true;
}

SnGraph build_graph(const Selection& selection, const SdfGrid& sdf, const GraphParams& params, int threads) {
    params.validate();
    if (selection.nodes.empty()) throw Error("cannot build a graph from an empty selection");

    SnGraph g;
    g.nodes = selection.nodes;
    g.params = params;
    g.meta.resolution = sdf.resolution();
    g.meta.sampler = selection.method;
    g.meta.requested_n = selection.requested_n;
    g.meta.achieved_n = selection.achieved_n;

    const std::size_t n = g.nodes.size();
    if (n < 2) return g;

    // Rules 1 and 2 over every unordered pair.
    struct Candidate {
        double length2;
        Edge edge;
    };
    const int workers = threads > 0 ? threads : max_threads();
    std::vector<std::vector<Candidate>> per_chunk(static_cast<std::size_t>(std::max(1, workers)));
    parallel_chunks(n, workers, [&](int chunk, std::size_t begin, std::size_t end) {
        auto& out = per_chunk[static_cast<std::size_t>(chunk)];
        for (std::size_t a = begin; a < end; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!edge_interior_test(g.nodes[a], g.nodes[b], sdf, params)) continue;
                if (!edge_sphere_clearance(a, b, g.nodes)) continue;
                out.push_back({squared_distance(g.nodes[a].center, g.nodes[b].center),
                               {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}});
            }
        }
    });
    std::vector<Candidate> candidates;
    for (auto& chunk : per_chunk) candidates.insert(candidates.end(), chunk.begin(), chunk.end());
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.length2 != y.length2) return x.length2 < y.length2;
        return x.edge < y.edge;
    });

    // Rule 3: shortest first under the degree cap.
    std::vector<int> degree(n, 0);
    for (const Candidate& c : candidates) {
        const auto [a, b] = c.edge;
        if (degree[a] < params.q && degree[b] < params.q) {
            g.edges.push_back(c.edge);
            ++degree[a];
            ++degree[b];
        }
    }

    // Rule 4: isolated nodes join their nearest node.
    for (std::size_t u = 0; u < n; ++u) {
        if (degree[u] != 0) continue;
        std::size_t nearest = u;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            const double d2 = squared_distance(g.nodes[u].center, g.nodes[v].center);
            if (d2 < best) {
                best = d2;
                nearest = v;
            }
        }
        const Edge e{static_cast<std::uint32_t>(std::min(u, nearest)), static_cast<std::uint32_t>(std::max(u, nearest))};
        g.edges.push_back(e);
        g.rule4_edges.push_back(e);
        ++degree[u];
        ++degree[nearest];
    }

    std::sort(g.edges.begin(), g.edges.end());
    std::sort(g.rule4_edges.begin(), g.rule4_edges.end());
    return g;
}

}  // namespace sngraph
