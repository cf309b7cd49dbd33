#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfi/dataset.hpp"
#include "vfi/flow_estimation.hpp"
#include "vfi/metrics.hpp"

namespace vfi {

struct BenchOptions {
    std::filesystem::path root;
    DatasetLayout layout = DatasetLayout::flat_triplet;
    std::filesystem::path out_dir = "bench-out";
    std::filesystem::path list_file;      // vimeo clip list, optional
    std::filesystem::path saliency_dir;   // per-sample maps <dir>/<id>.png; empty = spectral
    std::optional<std::size_t> limit;
    std::uint64_t seed = 0;
    double t = 0.5;
    FlowParams flow;
    double coverage_threshold = 0.25;
    bool binarize_saliency = false;
    bool markdown_report = false;  // write report.md next to report.csv
    int threads = 1;
};

struct BenchSummary {
    std::size_t total = 0;      // samples in the evaluated manifest
    std::size_t evaluated = 0;
    std::size_t failed = 0;
    EvalRecord mean;            // per-metric means, infinite PSNRs excluded
    std::size_t inf_psnr = 0, inf_f_psnr = 0, inf_b_psnr = 0;
    std::vector<EvalRecord> records;           // manifest order
    std::vector<std::string> failures;         // "<id>: <reason>"
    std::filesystem::path csv_path;
};

/// Run the full benchmark: scan + optional subsample, interpolate every
/// triplet at time t, evaluate against the middle frame under the saliency
/// mask, and write report.csv (+ report.md when asked), manifest.json and
/// config.txt into out_dir. Per-sample failures are recorded and skipped.
/// Output is deterministic for a fixed option set regardless of thread count.
BenchSummary run_bench(const BenchOptions& options);

/// The flat key=value configuration record written alongside every report.
std::string bench_config_text(const BenchOptions& options);

}  // namespace vfi
