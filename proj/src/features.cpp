#include "sngraph/features.hpp"

#include <algorithm>
#include <cmath>

namespace sngraph {

std::vector<std::uint32_t> neighbor_order(const SnGraph& graph, std::size_t i) {
    std::vector<std::uint32_t> nbrs;
    for (const auto& [a, b] : graph.edges) {
        if (a == i) nbrs.push_back(b);
        if (b == i) nbrs.push_back(a);
    }
    std::sort(nbrs.begin(), nbrs.end());

    const Vec3& ci = graph.nodes[i].center;
    std::vector<double> dist(nbrs.size());
    for (std::size_t k = 0; k < nbrs.size(); ++k) dist[k] = distance(ci, graph.nodes[nbrs[k]].center);

    auto closer = [](double da, std::uint32_t ia, double db, std::uint32_t ib) {
        constexpr double kTieTolerance = 1e-9;
        if (std::abs(da - db) <= kTieTolerance * std::max(da, db)) return ia < ib;
        return da < db;
    };
    // Insertion sort: the tolerant comparison is not a strict weak order.
    for (std::size_t k = 1; k < nbrs.size(); ++k) {
        std::size_t m = k;
        while (m > 0 && closer(dist[m], nbrs[m], dist[m - 1], nbrs[m - 1])) {
            std::swap(dist[m], dist[m - 1]);
            std::swap(nbrs[m], nbrs[m - 1]);
            --m;
        }
    }
    return nbrs;
}

FeatureMatrix extract_pr(const SnGraph& graph) {
    FeatureMatrix fm;
    fm.kind = FeatureKind::PR;
    fm.rows = graph.nodes.size();
    fm.cols = kPrWidth;
    fm.values.reserve(fm.rows * fm.cols);
    for (const SphereNode& n : graph.nodes) {
        fm.values.push_back(static_cast<float>(n.center.x));
        fm.values.push_back(static_cast<float>(n.center.y));
        fm.values.push_back(static_cast<float>(n.center.z));
        fm.values.push_back(static_cast<float>(n.radius));
    }
    return fm;
}

FeatureMatrix extract_adr(const SnGraph& graph) {
    FeatureMatrix fm;
    fm.kind = FeatureKind::ADR;
    fm.rows = graph.nodes.size();
    fm.cols = kAdrWidth;
    fm.values.assign(fm.rows * fm.cols, 0.0f);
    fm.neighbor_order.resize(fm.rows);

    constexpr std::size_t kDistanceBase = kAdrCosines;               // 15
    constexpr std::size_t kRadiusBase = kDistanceBase + 1 + kAdrNeighbors;  // 22

    for (std::size_t i = 0; i < fm.rows; ++i) {
        auto order = neighbor_order(graph, i);
        if (order.size() > kAdrNeighbors) order.resize(kAdrNeighbors);
        fm.neighbor_order[i] = order;

        float* row = fm.values.data() + i * fm.cols;
        const SphereNode& self = graph.nodes[i];
        const std::size_t m = order.size();

        std::vector<Vec3> dirs(m);
        std::vector<double> lengths(m);
        for (std::size_t a = 0; a < m; ++a) {
            dirs[a] = graph.nodes[order[a]].center - self.center;
            lengths[a] = norm(dirs[a]);
            if (lengths[a] == 0.0) fm.degenerate_edge = true;
        }
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                if (lengths[a] == 0.0 || lengths[b] == 0.0) continue;
                const double c = std::clamp(dot(dirs[a], dirs[b]) / (lengths[a] * lengths[b]), -1.0, 1.0);
                row[cosine_slot(a, b)] = static_cast<float>(c);
            }
        }

        row[kDistanceBase] = static_cast<float>(norm(self.center));
        row[kRadiusBase] = static_cast<float>(self.radius);
        for (std::size_t a = 0; a < m; ++a) {
            row[kDistanceBase + 1 + a] = static_cast<float>(lengths[a]);
            row[kRadiusBase + 1 + a] = static_cast<float>(graph.nodes[order[a]].radius);
        }
    }
    return fm;
}

}  // namespace sngraph
