#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sngraph/error.hpp"
#include "sngraph/graph_io.hpp"
#include "sngraph/grapher.hpp"
#include "sngraph/sampler.hpp"

namespace sngraph {

enum class FeatureSet { None, PR, ADR, Both };
enum class OutputFormat { Json, Binary, Ply };
enum class ThresholdUnits { Normalized, Voxel };

std::string_view to_string(FeatureSet f);
std::string_view to_string(OutputFormat f);
std::string_view to_string(ThresholdUnits u);
FeatureSet parse_feature_set(std::string_view s);
OutputFormat parse_output_format(std::string_view s);
ThresholdUnits parse_threshold_units(std::string_view s);

// File extension (with dot) written for each output format.
std::string_view output_extension(OutputFormat f);

struct PipelineConfig {
    int resolution = 128;
    int node_count = 32;
    GraphParams graph;
    SamplerMethod sampler = SamplerMethod::NodeSphere;
    FeatureSet features = FeatureSet::Both;
    OutputFormat format = OutputFormat::Json;
    // Voxel: t_d is given in voxels and divided by the resolution before use.
    ThresholdUnits threshold_units = ThresholdUnits::Normalized;
    int threads = 0;  // inside one model; 0 = max_threads()

    void validate() const;
    GraphParams effective_graph_params() const;
};

// Raised when the solid grid has no interior voxel to place a node in.
class EmptyInteriorError : public Error {
public:
    using Error::Error;
};

GraphFile run_pipeline_on_mesh(const TriangleMesh& mesh, const PipelineConfig& cfg,
                               const std::string& source_id);

// load -> normalize -> voxelize -> solidify -> SDF -> select -> connect -> features
GraphFile run_pipeline(const std::filesystem::path& mesh_path, const PipelineConfig& cfg);

void write_output(const GraphFile& file, OutputFormat format, const std::filesystem::path& path);

}  // namespace sngraph
