// sngraph: mesh -> sphere node graph conversion tool.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sngraph/dataset.hpp"
#include "sngraph/graph_io.hpp"
#include "sngraph/mesh.hpp"
#include "sngraph/parallel.hpp"
#include "sngraph/pipeline.hpp"
#include "sngraph/sdf.hpp"
#include "sngraph/voxel.hpp"

namespace {

struct ConfigFlags {
    std::string sampler = "nodesphere";
    std::string features = "both";
    std::string format = "json";
    std::string units = "normalized";
};

void add_config_options(CLI::App* cmd, sngraph::PipelineConfig& cfg, ConfigFlags& flags) {
    cmd->add_option("--resolution", cfg.resolution, "Voxels per axis")->capture_default_str();
    cmd->add_option("--nodes,-n", cfg.node_count, "Number of sphere nodes")->capture_default_str();
    cmd->add_option("--p", cfg.graph.p, "Samples per candidate edge")->capture_default_str();
    cmd->add_option("--t-d", cfg.graph.t_d, "SDF threshold below which a sample is outside")->capture_default_str();
    cmd->add_option("--t-p", cfg.graph.t_p, "Outside fraction that rejects an edge")->capture_default_str();
    cmd->add_option("--q", cfg.graph.q, "Degree cap")->capture_default_str();
    cmd->add_option("--sampler", flags.sampler, "nodesphere | fss")->capture_default_str();
    cmd->add_option("--features", flags.features, "none | pr | adr | both")->capture_default_str();
    cmd->add_option("--format", flags.format, "json | binary | ply")->capture_default_str();
    cmd->add_option("--threshold-units", flags.units, "normalized | voxel (unit of --t-d)")->capture_default_str();
}

void apply_flags(sngraph::PipelineConfig& cfg, const ConfigFlags& flags) {
    cfg.sampler = sngraph::parse_sampler_method(flags.sampler);
    cfg.features = sngraph::parse_feature_set(flags.features);
    cfg.format = sngraph::parse_output_format(flags.format);
    cfg.threshold_units = sngraph::parse_threshold_units(flags.units);
    cfg.validate();
}

void print_stats(const sngraph::GraphFile& file, std::ostream& os) {
    const sngraph::SnGraph& g = file.graph;
    const auto adj = g.adjacency();
    std::map<std::size_t, int> histogram;
    for (const auto& list : adj) ++histogram[list.size()];
    double min_r = 0.0, max_r = 0.0;
    if (!g.nodes.empty()) {
        const auto [lo, hi] = std::minmax_element(g.nodes.begin(), g.nodes.end(),
                                                  [](const auto& a, const auto& b) { return a.radius < b.radius; });
        min_r = lo->radius;
        max_r = hi->radius;
    }
    // Binary files carry no metadata; resolution 0 marks that.
    if (g.meta.resolution > 0) {
        os << "source:      " << (g.meta.source.empty() ? "-" : g.meta.source) << '\n'
           << "sampler:     " << sngraph::to_string(g.meta.sampler) << '\n'
           << "resolution:  " << g.meta.resolution << '\n'
           << "requested:   " << g.meta.requested_n << '\n';
    } else {
        os << "metadata:    not stored\n";
    }
    os << "nodes:       " << g.nodes.size() << '\n'
       << "edges:       " << g.edges.size() << " (rule 4: " << g.rule4_edges.size() << ")\n"
       << "radius:      [" << min_r << ", " << max_r << "]\n"
       << "degrees:    ";
    for (const auto& [deg, count] : histogram) os << ' ' << deg << ':' << count;
    os << "\nfeatures:    " << (file.pr ? "pr " : "") << (file.adr ? "adr" : "") << (!file.pr && !file.adr ? "none" : "")
       << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convert triangle meshes into sphere node graphs"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads inside one model (0 = auto, capped by SNGRAPH_THREADS)");

    sngraph::PipelineConfig cfg;
    ConfigFlags flags;

    auto* convert = app.add_subcommand("convert", "Convert a single mesh");
    std::string mesh_path, output_path, dump_voxels, dump_sdf;
    convert->add_option("mesh", mesh_path, "Input .off or .obj")->required()->check(CLI::ExistingFile);
    convert->add_option("-o,--output", output_path, "Output file (default: <mesh stem>.<format ext>)");
    convert->add_option("--dump-voxels", dump_voxels, "Also write the solid occupancy grid (SNV1)");
    convert->add_option("--dump-sdf", dump_sdf, "Also write the SDF grid (SNF1)");
    add_config_options(convert, cfg, flags);

    auto* dataset = app.add_subcommand("dataset", "Convert a <class>/<split>/<file> tree");
    std::string root, out_root;
    int jobs = 0;
    bool skip_existing = false;
    dataset->add_option("root", root, "Dataset root")->required();
    dataset->add_option("-o,--output", out_root, "Output root (mirrors the input tree)")->required();
    dataset->add_option("--jobs,-j", jobs, "Parallel files (0 = auto)");
    dataset->add_flag("--skip-existing", skip_existing, "Keep outputs that already exist");
    add_config_options(dataset, cfg, flags);

    auto* inspect = app.add_subcommand("inspect", "Print statistics of a graph file");
    std::string graph_path;
    inspect->add_option("graph", graph_path, "Graph file (.json or .sng)")->required()->check(CLI::ExistingFile);

    auto* ply = app.add_subcommand("export-ply", "Write a graph file as ASCII PLY");
    std::string ply_in, ply_out;
    ply->add_option("graph", ply_in, "Graph file (.json or .sng)")->required()->check(CLI::ExistingFile);
    ply->add_option("-o,--output", ply_out, "Output .ply")->required();

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) sngraph::set_max_threads(threads);

    try {
        if (*convert) {
            apply_flags(cfg, flags);
            if (output_path.empty()) {
                output_path = std::filesystem::path(mesh_path).stem().string() +
                              std::string(sngraph::output_extension(cfg.format));
            }
            if (!dump_voxels.empty() || !dump_sdf.empty()) {
                const auto mesh = sngraph::normalize_mesh(sngraph::load_mesh(mesh_path));
                const auto solid = sngraph::solidify(sngraph::voxelize_surface(mesh, cfg.resolution));
                if (!dump_voxels.empty()) sngraph::write_voxels(solid, dump_voxels);
                if (!dump_sdf.empty()) sngraph::write_sdf(sngraph::compute_sdf(solid), dump_sdf);
            }
            const auto file = sngraph::run_pipeline(mesh_path, cfg);
            sngraph::write_output(file, cfg.format, output_path);
            std::cout << output_path << ": " << file.graph.nodes.size() << " nodes, " << file.graph.edges.size()
                      << " edges\n";
            return 0;
        }
        if (*dataset) {
            apply_flags(cfg, flags);
            const auto report = sngraph::process_dataset(root, cfg, {out_root, jobs, skip_existing});
            std::cout << report.manifest.rows.size() << " converted (" << report.skipped << " reused), "
                      << report.failures.size() << " failed\n";
            return report.failures.empty() ? 0 : 2;
        }
        if (*inspect) {
            print_stats(sngraph::read_graph(graph_path), std::cout);
            return 0;
        }
        if (*ply) {
            sngraph::export_ply(sngraph::read_graph(ply_in).graph, ply_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "sngraph: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
