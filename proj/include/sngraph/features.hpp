#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sngraph/grapher.hpp"

namespace sngraph {

enum class FeatureKind { PR, ADR };

inline constexpr std::size_t kPrWidth = 4;
inline constexpr std::size_t kAdrWidth = 29;
inline constexpr std::size_t kAdrNeighbors = 6;
inline constexpr std::size_t kAdrCosines = kAdrNeighbors * (kAdrNeighbors - 1) / 2;

// Row-major node-count x width matrix of f32.
struct FeatureMatrix {
    FeatureKind kind = FeatureKind::PR;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> values;
    std::vector<std::vector<std::uint32_t>> neighbor_order;  // ADR only
    bool degenerate_edge = false;  // ADR: a zero-length edge was seen

    float at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    const float* row(std::size_t r) const { return values.data() + r * cols; }

    bool operator==(const FeatureMatrix& o) const {
        return kind == o.kind && rows == o.rows && cols == o.cols && values == o.values;
    }
};

// Neighbours of node i, nearest first. Distances equal to within 1e-9
// (relative) fall back to the smaller index so the order is stable under
// rotation.
std::vector<std::uint32_t> neighbor_order(const SnGraph& graph, std::size_t i);

// Row i = (x, y, z, r).
FeatureMatrix extract_pr(const SnGraph& graph);

// Row layout, using the first six entries of neighbor_order:
//   [0, 15)  cosine of the angle between edges to neighbours (a, b), a < b, at
//            the slot of (a, b) in the lexicographic 6-neighbour pair order
//   [15, 22) |center|, then distance to neighbours 1..6
//   [22, 29) own radius, then radii of neighbours 1..6
// Absent neighbours leave zeros.
FeatureMatrix extract_adr(const SnGraph& graph);

// Slot of pair (a, b), a < b < 6, among the 15 cosine slots.
constexpr std::size_t cosine_slot(std::size_t a, std::size_t b) {
    return a * (2 * kAdrNeighbors - a - 1) / 2 + (b - a - 1);
}

}  // namespace sngraph
