#include "sngraph/pipeline.hpp"

#include "sngraph/error.hpp"
#include "sngraph/features.hpp"
#include "sngraph/mesh.hpp"
#include "sngraph/sdf.hpp"
#include "sngraph/voxel.hpp"

namespace sngraph {

std::string_view to_string(FeatureSet f) {
    switch (f) {
        case FeatureSet::None: return "none";
        case FeatureSet::PR: return "pr";
        case FeatureSet::ADR: return "adr";
        case FeatureSet::Both: return "both";
    }
    return "both";
}

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Binary: return "binary";
        case OutputFormat::Ply: return "ply";
    }
    return "json";
}

std::string_view to_string(ThresholdUnits u) { return u == ThresholdUnits::Normalized ? "normalized" : "voxel"; }

FeatureSet parse_feature_set(std::string_view s) {
    if (s == "none") return FeatureSet::None;
    if (s == "pr") return FeatureSet::PR;
    if (s == "adr") return FeatureSet::ADR;
    if (s == "both") return FeatureSet::Both;
    throw Error("unknown feature set '" + std::string(s) + "'");
}

OutputFormat parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "binary") return OutputFormat::Binary;
    if (s == "ply") return OutputFormat::Ply;
    throw Error("unknown output format '" + std::string(s) + "'");
}

ThresholdUnits parse_threshold_units(std::string_view s) {
    if (s == "normalized") return ThresholdUnits::Normalized;
    if (s == "voxel") return ThresholdUnits::Voxel;
    throw Error("unknown threshold units '" + std::string(s) + "'");
}

std::string_view output_extension(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return ".json";
        case OutputFormat::Binary: return ".sng";
        case OutputFormat::Ply: return ".ply";
    }
    return ".json";
}

void PipelineConfig::validate() const {
    if (resolution < 4) throw Error("resolution must be at least 4");
    if (node_count < 1) throw Error("node count must be at least 1");
    graph.validate();
}

GraphParams PipelineConfig::effective_graph_params() const {
    GraphParams p = graph;
    if (threshold_units == ThresholdUnits::Voxel) p.t_d = graph.t_d / resolution;
    return p;
}

GraphFile run_pipeline_on_mesh(const TriangleMesh& mesh, const PipelineConfig& cfg, const std::string& source_id) {
    cfg.validate();
    const TriangleMesh normalized = normalize_mesh(mesh);
    const VoxelGrid solid = solidify(voxelize_surface(normalized, cfg.resolution, cfg.threads));
    const SdfGrid sdf = compute_sdf(solid, cfg.threads);
    if (sdf.empty_object() || sdf.count_interior() == 0) {
        throw EmptyInteriorError(source_id + ": model has no interior voxels");
    }
    const Selection sel = select_from_candidates(interior_candidates(sdf), cfg.node_count, cfg.sampler, cfg.threads);

    GraphFile out;
    out.graph = build_graph(sel, sdf, cfg.effective_graph_params(), cfg.threads);
    out.graph.meta.source = source_id;
    if (cfg.features == FeatureSet::PR || cfg.features == FeatureSet::Both) out.pr = extract_pr(out.graph);
    if (cfg.features == FeatureSet::ADR || cfg.features == FeatureSet::Both) out.adr = extract_adr(out.graph);
    return out;
}

GraphFile run_pipeline(const std::filesystem::path& mesh_path, const PipelineConfig& cfg) {
    return run_pipeline_on_mesh(load_mesh(mesh_path), cfg, mesh_path.filename().string());
}

void write_output(const GraphFile& file, OutputFormat format, const std::filesystem::path& path) {
    switch (format) {
        case OutputFormat::Json: write_graph_json(file, path); return;
        case OutputFormat::Binary: write_graph_binary(file, path); return;
        case OutputFormat::Ply: export_ply(file.graph, path); return;
    }
}

}  // namespace sngraph
