#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sngraph/features.hpp"
#include "sngraph/grapher.hpp"

namespace sngraph {

inline constexpr int kGraphJsonVersion = 1;

// A graph plus whichever feature matrices were computed for it.
struct GraphFile {
    SnGraph graph;
    std::optional<FeatureMatrix> pr;
    std::optional<FeatureMatrix> adr;

    bool operator==(const GraphFile&) const = default;
};

// JSON: {"meta":{...,"version":1}, "nodes":[{"c":[x,y,z],"r":r}], "edges":[[i,j]],
// "rule4_edges":[[i,j]], "features":{"pr":[[...]],"adr":[[...]]}}.
std::string to_json_string(const GraphFile& file);
GraphFile from_json_string(const std::string& text);
void write_graph_json(const GraphFile& file, const std::filesystem::path& path);
GraphFile read_graph_json(const std::filesystem::path& path);

// Binary "SNG1", little-endian:
//   u32 N | u32 E | u32 E4 | u8 flags (bit0 PR, bit1 ADR)
//   N x (f32 x, y, z, r) | E x (u32, u32) | E4 x (u32, u32)
//   [N x 4 f32 PR] [N x 29 f32 ADR]
// Graph metadata and parameters are not part of this encoding.
std::string to_binary_string(const GraphFile& file);
GraphFile from_binary_string(const std::string& bytes);
void write_graph_binary(const GraphFile& file, const std::filesystem::path& path);
GraphFile read_graph_binary(const std::filesystem::path& path);

// ASCII PLY: one vertex per node (x, y, z, radius) and one edge element per edge.
std::string to_ply_string(const SnGraph& graph);
void export_ply(const SnGraph& graph, const std::filesystem::path& path);

// Picks the reader from the extension (.json, .sng).
GraphFile read_graph(const std::filesystem::path& path);

}  // namespace sngraph
