#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sngraph/features.hpp"
#include "support/shapes.hpp"

using namespace sngraph;

namespace {

SphereNode node(double x, double y, double z, double r) { return {{x, y, z}, r, {0, 0, 0}}; }

SnGraph graph_of(std::vector<SphereNode> nodes, std::vector<Edge> edges) {
    SnGraph g;
    g.nodes = std::move(nodes);
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    return g;
}

// Uniform rotation from a normalized Gaussian quaternion.
std::array<Vec3, 3> random_rotation(std::mt19937& rng) {
    std::normal_distribution<double> nd;
    double w = nd(rng), x = nd(rng), y = nd(rng), z = nd(rng);
    const double s = std::sqrt(w * w + x * x + y * y + z * z);
    w /= s, x /= s, y /= s, z /= s;
    return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
            Vec3{2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
            Vec3{2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
}

SnGraph rotated(const SnGraph& g, const std::array<Vec3, 3>& q) {
    SnGraph out = g;
    for (auto& n : out.nodes) n.center = {dot(q[0], n.center), dot(q[1], n.center), dot(q[2], n.center)};
    return out;
}

SnGraph random_graph(std::mt19937& rng, int n, double edge_prob) {
    std::uniform_real_distribution<double> pos(-0.5, 0.5), rad(0.01, 0.2), coin(0.0, 1.0);
    std::vector<SphereNode> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(node(pos(rng), pos(rng), pos(rng), rad(rng)));
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng) < edge_prob) edges.emplace_back(a, b);
    return graph_of(std::move(nodes), std::move(edges));
}

}  // namespace

TEST_CASE("cosine slots enumerate pairs lexicographically") {
    std::size_t expected = 0;
    for (std::size_t a = 0; a < kAdrNeighbors; ++a)
        for (std::size_t b = a + 1; b < kAdrNeighbors; ++b) CHECK(cosine_slot(a, b) == expected++);
    CHECK(expected == kAdrCosines);
    CHECK(kAdrCosines + 7 + 7 == kAdrWidth);
}

TEST_CASE("neighbor order: by distance, ties by index") {
    const auto g = graph_of({node(0, 0, 0, 0.1), node(0.2, 0, 0, 0.1), node(0, 0.1, 0, 0.1)}, {{0, 1}, {0, 2}});
    CHECK(neighbor_order(g, 0) == std::vector<std::uint32_t>{2, 1});
    CHECK(neighbor_order(g, 1) == std::vector<std::uint32_t>{0});

    std::vector<SphereNode> nodes(8, node(0, 0, 0.4, 0.1));
    nodes[0] = node(0, 0, 0, 0.1);
    nodes[7] = node(0.1, 0, 0, 0.1);
    nodes[3] = node(0, -0.1, 0, 0.1);
    const auto tie = graph_of(nodes, {{0, 7}, {0, 3}});
    CHECK(neighbor_order(tie, 0) == std::vector<std::uint32_t>{3, 7});
    CHECK(neighbor_order(tie, 5).empty());
}

TEST_CASE("PR rows are position and radius") {
    const auto g = graph_of({node(0, 0, 0, 0.1), node(0.25, -0.125, 0.5, 0.0625)}, {{0, 1}});
    const auto pr = extract_pr(g);
    CHECK(pr.rows == 2);
    CHECK(pr.cols == kPrWidth);
    CHECK(std::vector<float>(pr.row(0), pr.row(0) + 4) == std::vector<float>{0, 0, 0, 0.1f});
    CHECK(std::vector<float>(pr.row(1), pr.row(1) + 4) == std::vector<float>{0.25f, -0.125f, 0.5f, 0.0625f});
}

TEST_CASE("ADR of a degree-1 node is padded with zeros") {
    // d = 0.5 from the origin, neighbor at e = 0.3.
    const auto g = graph_of({node(0.3, 0.4, 0, 0.07), node(0.3, 0.4, 0.3, 0.05)}, {{0, 1}});
    const auto adr = extract_adr(g);
    REQUIRE(adr.cols == 29);
    std::vector<float> expected(29, 0.0f);
    expected[15] = static_cast<float>(std::sqrt(0.3 * 0.3 + 0.4 * 0.4));
    expected[16] = static_cast<float>(std::sqrt(0.09));
    expected[22] = 0.07f;
    expected[23] = 0.05f;
    const std::vector<float> row(adr.row(0), adr.row(0) + 29);
    for (std::size_t c = 0; c < 29; ++c) CHECK(row[c] == doctest::Approx(expected[c]).epsilon(1e-7));
    CHECK(row[0] == 0.0f);
    for (std::size_t c = 17; c < 22; ++c) CHECK(row[c] == 0.0f);
    CHECK_FALSE(adr.degenerate_edge);
}

TEST_CASE("ADR cosines for known angles") {
    // Neighbors at distances 0.1 (x), 0.2 (y), 0.3 (-x).
    const auto g = graph_of({node(0, 0, 0, 0.1), node(0.1, 0, 0, 0.1), node(0, 0.2, 0, 0.1), node(-0.3, 0, 0, 0.1)},
                            {{0, 1}, {0, 2}, {0, 3}});
    const auto adr = extract_adr(g);
    CHECK(adr.neighbor_order[0] == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(adr.at(0, cosine_slot(0, 1)) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(adr.at(0, cosine_slot(0, 2)) == doctest::Approx(-1.0));
    CHECK(adr.at(0, cosine_slot(1, 2)) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(adr.at(0, cosine_slot(0, 3)) == 0.0f);
    CHECK(adr.at(0, 15) == 0.0f);  // at the origin
}

TEST_CASE("ADR truncates to the six nearest neighbors") {
    std::vector<SphereNode> nodes{node(0, 0, 0, 0.05)};
    std::vector<Edge> edges;
    for (int k = 1; k <= 8; ++k) {
        const double a = k * 0.7;
        nodes.push_back(node(0.04 * k * std::cos(a), 0.04 * k * std::sin(a), 0.01 * k, 0.01 * k));
        edges.emplace_back(0, k);
    }
    const auto adr = extract_adr(graph_of(nodes, edges));
    CHECK(adr.neighbor_order[0] == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 6});
    CHECK(adr.at(0, 28) == doctest::Approx(0.06));
}

TEST_CASE("coincident centers raise the degenerate flag and zero their cosines") {
    const auto g = graph_of({node(0.1, 0, 0, 0.1), node(0.1, 0, 0, 0.1), node(0.3, 0, 0, 0.1)}, {{0, 1}, {0, 2}});
    const auto adr = extract_adr(g);
    CHECK(adr.degenerate_edge);
    CHECK(adr.at(0, cosine_slot(0, 1)) == 0.0f);
    for (float v : adr.values) CHECK(std::isfinite(v));
}

TEST_CASE("ADR is invariant under rotation about the origin; PR is equivariant") {
    std::mt19937 rng(41);
    double worst = 0.0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto g = random_graph(rng, 4 + trial % 20, 0.3);
        const auto q = random_rotation(rng);
        const auto r = rotated(g, q);
        const auto a = extract_adr(g), b = extract_adr(r);
        REQUIRE(a.values.size() == b.values.size());
        for (std::size_t k = 0; k < a.values.size(); ++k)
            worst = std::max(worst, static_cast<double>(std::abs(a.values[k] - b.values[k])));

        const auto pa = extract_pr(g), pb = extract_pr(r);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const Vec3 p{pa.at(i, 0), pa.at(i, 1), pa.at(i, 2)};
            const Vec3 expected{dot(q[0], p), dot(q[1], p), dot(q[2], p)};
            CHECK(distance(expected, Vec3{pb.at(i, 0), pb.at(i, 1), pb.at(i, 2)}) < 1e-6);
            CHECK(pa.at(i, 3) == pb.at(i, 3));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("ADR value ranges") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto adr = extract_adr(random_graph(rng, 12, 0.5));
        for (std::size_t i = 0; i < adr.rows; ++i) {
            for (std::size_t c = 0; c < 15; ++c) {
                CHECK(adr.at(i, c) >= -1.0f);
                CHECK(adr.at(i, c) <= 1.0f);
            }
            for (std::size_t c = 15; c < 29; ++c) CHECK(adr.at(i, c) >= 0.0f);
        }
    }
}
