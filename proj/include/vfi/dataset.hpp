#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace vfi {

/// One benchmark triplet; middle is the interpolation ground truth.
struct TripletSample {
    std::string id;
    std::filesystem::path first;
    std::filesystem::path middle;
    std::filesystem::path last;
    std::optional<std::filesystem::path> saliency;
};

enum class DatasetLayout { vimeo, middlebury, flat_triplet };

std::string layout_name(DatasetLayout layout);
DatasetLayout parse_layout(const std::string& name);  // "vimeo" | "middlebury" | "flat"

struct DatasetManifest {
    std::filesystem::path root;
    DatasetLayout layout = DatasetLayout::flat_triplet;
    std::vector<TripletSample> samples;  // unique ids, sorted lexicographically
};

/// Scan a dataset tree. Layouts:
///  - vimeo: sequences/<seq>/<clip>/im1.png im2.png im3.png, id "<seq>/<clip>",
///    optionally filtered by a list file of "<seq>/<clip>" lines;
///  - middlebury: <scene>/frame10.png frame10i11.png frame11.png, id <scene>;
///  - flat_triplet: any leaf directory holding exactly three frames with stems
///    im1/im2/im3 or frame1/frame2/frame3 (png/ppm/pgm), id = relative path.
/// Only paths are collected; pixel data is validated when loaded.
/// Throws IoError when the root is missing or nothing matches.
DatasetManifest scan_dataset(const std::filesystem::path& root, DatasetLayout layout,
                             const std::filesystem::path& list_file = {});

/// Uniform subset of n samples without replacement, drawn with mt19937_64 and a
/// partial Fisher-Yates shuffle (rejection-sampled bounded draws, so the result
/// is platform-independent), then re-sorted by id.
DatasetManifest subsample(const DatasetManifest& manifest, std::size_t n, std::uint64_t seed);

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace vfi
