#include "sngraph/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "sngraph/error.hpp"
#include "sngraph/parallel.hpp"

namespace sngraph {
namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool is_mesh_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".off" || ext == ".obj";
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (directories ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Job {
    fs::path input;
    std::string relative;
    std::string label;
    std::string split;
    std::string output_relative;
};

// Node count of an existing output file.
int achieved_from_output(const fs::path& path, OutputFormat format) {
    if (format != OutputFormat::Ply) return static_cast<int>(read_graph(path).graph.nodes.size());
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line) && line != "end_header") {
        if (line.rfind("element vertex ", 0) == 0) return std::stoi(line.substr(15));
    }
    throw FormatError("no vertex element in " + path.string());
}

}  // namespace

std::string DatasetManifest::to_csv() const {
    std::string out = "path,label,split,achieved_n,output\n";
    for (const ManifestRow& r : rows) {
        out += csv_field(r.path) + ',' + csv_field(r.label) + ',' + csv_field(r.split) + ',' +
               std::to_string(r.achieved_n) + ',' + csv_field(r.output) + '\n';
    }
    return out;
}

DatasetManifest DatasetManifest::from_csv(const std::string& text) {
    DatasetManifest m;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).size() != 5) throw FormatError("manifest header missing");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw FormatError("manifest row must have 5 fields");
        if (f[2] != "train" && f[2] != "test") throw FormatError("manifest split must be train or test");
        m.rows.push_back({f[0], f[1], f[2], std::stoi(f[3]), f[4]});
    }
    return m;
}

DatasetReport process_dataset(const fs::path& root, const PipelineConfig& cfg, const DatasetOptions& options) {
    cfg.validate();
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error("dataset root is not a readable directory: " + root.string());
    if (options.output_root.empty()) throw Error("dataset output root is required");

    std::vector<Job> jobs;
    for (const fs::path& class_dir : sorted_entries(root, true)) {
        const std::string label = class_dir.filename().string();
        for (const char* split : {"train", "test"}) {
            const fs::path split_dir = class_dir / split;
            if (!fs::is_directory(split_dir)) continue;
            for (const fs::path& file : sorted_entries(split_dir, false)) {
                if (!is_mesh_file(file)) continue;
                Job job;
                job.input = file;
                job.label = label;
                job.split = split;
                job.relative = label + "/" + split + "/" + file.filename().string();
                job.output_relative = label + "/" + split + "/" + file.stem().string() +
                                      std::string(output_extension(cfg.format));
                jobs.push_back(std::move(job));
            }
        }
    }

    struct Outcome {
        std::optional<ManifestRow> row;
        std::optional<DatasetFailure> failure;
        bool skipped = false;
    };
    std::vector<Outcome> outcomes(jobs.size());

    const int workers = std::min<int>(resolve_worker_count(options.jobs), std::max<std::size_t>(1, jobs.size()));
    PipelineConfig worker_cfg = cfg;
    if (workers > 1) worker_cfg.threads = 1;

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < jobs.size(); idx = next++) {
            const Job& job = jobs[idx];
            Outcome& out = outcomes[idx];
            const fs::path target = options.output_root / job.output_relative;
            try {
                int achieved = 0;
                if (options.skip_existing && fs::exists(target)) {
                    achieved = achieved_from_output(target, cfg.format);
                    out.skipped = true;
                } else {
                    GraphFile file = run_pipeline_on_mesh(load_mesh(job.input), worker_cfg, job.relative);
                    fs::create_directories(target.parent_path());
                    write_output(file, cfg.format, target);
                    achieved = file.graph.meta.achieved_n;
                }
                out.row = ManifestRow{job.relative, job.label, job.split, achieved, job.output_relative};
            } catch (const std::exception& e) {
                out.failure = DatasetFailure{job.relative, e.what()};
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    DatasetReport report;
    for (Outcome& o : outcomes) {
        if (o.row) report.manifest.rows.push_back(std::move(*o.row));
        if (o.failure) {
            std::cerr << "sngraph: failed " << o.failure->path << ": " << o.failure->message << '\n';
            report.failures.push_back(std::move(*o.failure));
        }
        if (o.skipped) ++report.skipped;
    }
    fs::create_directories(options.output_root);
    std::ofstream manifest(options.output_root / "manifest.csv", std::ios::binary);
    if (!manifest) throw Error("cannot write manifest under " + options.output_root.string());
    manifest << report.manifest.to_csv();
    return report;
}

}  // namespace sngraph
