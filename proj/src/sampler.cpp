#include "sngraph/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sngraph/error.hpp"
#include "sngraph/parallel.hpp"

namespace sngraph {

std::string_view to_string(SamplerMethod method) {
    return method == SamplerMethod::NodeSphere ? "nodesphere" : "fss";
}

SamplerMethod parse_sampler_method(std::string_view name) {
    if (name == "nodesphere") return SamplerMethod::NodeSphere;
    if (name == "fss") return SamplerMethod::Fss;
    throw Error("unknown sampler '" + std::string(name) + "' (expected nodesphere or fss)");
}

double node_distance(const SphereNode& selected, const SphereNode& candidate) {
    const double e = distance(selected.center, candidate.center);
    return (e - selected.radius) + 2.0 * candidate.radius;
}

std::vector<SphereNode> interior_candidates(const SdfGrid& sdf) {
    std::vector<SphereNode> out;
    for (std::size_t li = 0; li < sdf.size(); ++li) {
        const float r = sdf.value(li);
        if (r > 0.0f) {
            const VoxelIndex v = sdf.unravel(li);
            out.push_back({sdf.center(v[0], v[1], v[2]), static_cast<double>(r), v});
        }
    }
    return out;
}

std::size_t first_node_index(const std::vector<SphereNode>& candidates) {
    if (candidates.empty()) throw Error("no interior voxels to select from");
    Vec3 centroid;
    for (const SphereNode& c : candidates) centroid = centroid + c.center;
    centroid = centroid * (1.0 / static_cast<double>(candidates.size()));

    std::size_t best = 0;
    double best_d2 = squared_distance(candidates[0].center, centroid);
    for (std::size_t j = 1; j < candidates.size(); ++j) {
        const SphereNode& c = candidates[j];
        if (c.radius < candidates[best].radius) continue;
        const double d2 = squared_distance(c.center, centroid);
        if (c.radius > candidates[best].radius || d2 < best_d2) {
            best = j;
            best_d2 = d2;
        }
    }
    return best;
}

SphereNode select_first(const SdfGrid& sdf) {
    const auto candidates = interior_candidates(sdf);
    return candidates[first_node_index(candidates)];
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

bool outside_sphere(double center_distance, double radius) {
    return center_distance > radius * (1.0 + kSurfaceSlack);
}

namespace {

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t index = kNone;
};

}  // namespace

Selection select_from_candidates(const std::vector<SphereNode>& candidates, int n, SamplerMethod method,
                                 int threads) {
    if (n < 1) throw Error("node count must be at least 1");
    if (candidates.empty()) throw Error("no interior voxels to select from");

    Selection sel;
    sel.method = method;
    sel.requested_n = n;

    const std::size_t count = candidates.size();
    // Per candidate: min over selected nodes of the selection distance, and
    // whether it is still eligible (unselected and, for NodeSphere, outside
    // every selected sphere).
    std::vector<double> min_dist(count, std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> eligible(count, 1);
    const bool nodesphere = method == SamplerMethod::NodeSphere;

    if (threads <= 0) threads = max_threads();
    // Fixed chunking: the reduction below combines chunk winners in order.
    const int chunks = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), count));
    std::vector<Best> chunk_best(static_cast<std::size_t>(chunks));

    std::size_t next = first_node_index(candidates);
    while (next != kNone) {
        const SphereNode& picked = candidates[next];
        sel.nodes.push_back(picked);
        eligible[next] = 0;
        if (static_cast<int>(sel.nodes.size()) >= n) break;

        std::fill(chunk_best.begin(), chunk_best.end(), Best{});
        parallel_chunks(count, chunks, [&](int chunk, std::size_t begin, std::size_t end) {
            Best best;
            const Vec3 pc = picked.center;
            const double pr = picked.radius;
            for (std::size_t j = begin; j < end; ++j) {
                if (!eligible[j]) continue;
                const SphereNode& c = candidates[j];
                const double e = distance(pc, c.center);
                double d = e;
                if (nodesphere) {
                    if (!outside_sphere(e, pr)) {
                        eligible[j] = 0;
                        continue;
                    }
                    d = (e - pr) + 2.0 * c.radius;
                }
                if (d < min_dist[j]) min_dist[j] = d;
                if (min_dist[j] > best.value) best = {min_dist[j], j};
            }
            chunk_best[static_cast<std::size_t>(chunk)] = best;
        });

        Best overall;
        for (const Best& b : chunk_best) {
            if (b.index != kNone && (overall.index == kNone || b.value > overall.value)) overall = b;
        }
        next = overall.index;
    }
    sel.achieved_n = static_cast<int>(sel.nodes.size());
    return sel;
}

Selection select_spheres(const SdfGrid& sdf, int n, int threads) {
    return select_from_candidates(interior_candidates(sdf), n, SamplerMethod::NodeSphere, threads);
}

Selection select_fss(const SdfGrid& sdf, int n, int threads) {
    return select_from_candidates(interior_candidates(sdf), n, SamplerMethod::Fss, threads);
}

}  // namespace sngraph
