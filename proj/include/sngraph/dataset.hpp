#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sngraph/pipeline.hpp"

namespace sngraph {

struct ManifestRow {
    std::string path;    // relative to the dataset root, '/' separated
    std::string label;   // class directory name
    std::string split;   // train | test
    int achieved_n = 0;
    std::string output;  // relative to the output root

    bool operator==(const ManifestRow&) const = default;
};

struct DatasetManifest {
    std::vector<ManifestRow> rows;

    std::string to_csv() const;
    static DatasetManifest from_csv(const std::string& text);
};

struct DatasetFailure {
    std::string path;
    std::string message;
};

struct DatasetOptions {
    std::filesystem::path output_root;
    int jobs = 0;                // 0 = auto
    bool skip_existing = false;  // reuse outputs that are already on disk
};

struct DatasetReport {
    DatasetManifest manifest;
    std::vector<DatasetFailure> failures;
    int skipped = 0;
};

// Walks <root>/<class>/<train|test>/<mesh>, converts every .off/.obj into a
// mirrored tree under options.output_root and writes manifest.csv there.
// Per-file failures are collected, not thrown.
DatasetReport process_dataset(const std::filesystem::path& root, const PipelineConfig& cfg,
                              const DatasetOptions& options);

}  // namespace sngraph
