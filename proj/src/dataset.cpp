#include "vfi/dataset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "vfi/error.hpp"

namespace fs = std::filesystem;

namespace vfi {

namespace {

const char* kImageExtensions[] = {".png", ".ppm", ".pgm"};

std::optional<fs::path> find_stem(const fs::path& dir, const std::string& stem) {
    for (const char* ext : kImageExtensions) {
        fs::path p = dir / (stem + ext);
        if (fs::exists(p)) return p;
    }
    return std::nullopt;
}

void scan_vimeo(const fs::path& root, const fs::path& list_file,
                std::vector<TripletSample>& out) {
    std::set<std::string> allowed;
    if (!list_file.empty()) {
        std::ifstream in(list_file);
        if (!in) throw IoError("cannot open list file: " + list_file.string());
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty()) allowed.insert(line);
        }
    }

    const fs::path sequences = root / "sequences";
    if (!fs::is_directory(sequences))
        throw IoError("vimeo layout expects a 'sequences' directory under " + root.string());
    for (const auto& seq : fs::directory_iterator(sequences)) {
        if (!seq.is_directory()) continue;
        for (const auto& clip : fs::directory_iterator(seq.path())) {
            if (!clip.is_directory()) continue;
            const std::string id =
                seq.path().filename().string() + "/" + clip.path().filename().string();
            if (!allowed.empty() && !allowed.count(id)) continue;
            const fs::path im1 = clip.path() / "im1.png";
            const fs::path im2 = clip.path() / "im2.png";
            const fs::path im3 = clip.path() / "im3.png";
            if (fs::exists(im1) && fs::exists(im2) && fs::exists(im3))
                out.push_back({id, im1, im2, im3, std::nullopt});
        }
    }
}

void scan_middlebury(const fs::path& root, std::vector<TripletSample>& out) {
    for (const auto& scene : fs::directory_iterator(root)) {
        if (!scene.is_directory()) continue;
        const auto first = find_stem(scene.path(), "frame10");
        const auto middle = find_stem(scene.path(), "frame10i11");
        const auto last = find_stem(scene.path(), "frame11");
        if (first && middle && last)
            out.push_back({scene.path().filename().string(), *first, *middle, *last,
                           std::nullopt});
    }
}

void scan_flat(const fs::path& root, std::vector<TripletSample>& out) {
    auto try_dir = [&](const fs::path& dir) {
        for (const char* base : {"im", "frame"}) {
            const auto f1 = find_stem(dir, std::string(base) + "1");
            const auto f2 = find_stem(dir, std::string(base) + "2");
            const auto f3 = find_stem(dir, std::string(base) + "3");
            if (f1 && f2 && f3) {
                std::string id = fs::relative(dir, root).generic_string();
                if (id == ".") id = dir.filename().string();
                out.push_back({id, *f1, *f2, *f3, std::nullopt});
                return;
            }
        }
    };
    try_dir(root);
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_directory()) try_dir(entry.path());
}

// Unbiased draw in [0, bound) via rejection; std::uniform_int_distribution is
// implementation-defined and would break cross-platform reproducibility.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % bound;
}

}  // namespace

std::string layout_name(DatasetLayout layout) {
    switch (layout) {
        case DatasetLayout::vimeo: return "vimeo";
        case DatasetLayout::middlebury: return "middlebury";
        case DatasetLayout::flat_triplet: return "flat";
    }
    return "flat";
}

DatasetLayout parse_layout(const std::string& name) {
    if (name == "vimeo") return DatasetLayout::vimeo;
    if (name == "middlebury") return DatasetLayout::middlebury;
    if (name == "flat" || name == "flat-triplet") return DatasetLayout::flat_triplet;
    throw std::invalid_argument("unknown dataset layout: " + name);
}

DatasetManifest scan_dataset(const fs::path& root, DatasetLayout layout,
                             const fs::path& list_file) {
    if (!fs::is_directory(root)) throw IoError("dataset root is not a directory: " + root.string());

    DatasetManifest manifest;
    manifest.root = root;
    manifest.layout = layout;
    switch (layout) {
        case DatasetLayout::vimeo: scan_vimeo(root, list_file, manifest.samples); break;
        case DatasetLayout::middlebury: scan_middlebury(root, manifest.samples); break;
        case DatasetLayout::flat_triplet: scan_flat(root, manifest.samples); break;
    }

    std::sort(manifest.samples.begin(), manifest.samples.end(),
              [](const TripletSample& a, const TripletSample& b) { return a.id < b.id; });
    if (manifest.samples.empty())
        throw IoError("no triplet samples found under " + root.string() + " (layout " +
                      layout_name(layout) + ")");
    return manifest;
}

DatasetManifest subsample(const DatasetManifest& manifest, std::size_t n, std::uint64_t seed) {
    const std::size_t total = manifest.samples.size();
    if (n == 0 || n > total)
        throw std::invalid_argument("subsample: n must be in [1, " + std::to_string(total) +
                                    "], got " + std::to_string(n));
    if (n == total) return manifest;

    std::vector<std::size_t> indices(total);
    for (std::size_t i = 0; i < total; ++i) indices[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + uniform_below(rng, total - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(n);

    DatasetManifest out;
    out.root = manifest.root;
    out.layout = manifest.layout;
    for (std::size_t i : indices) out.samples.push_back(manifest.samples[i]);
    std::sort(out.samples.begin(), out.samples.end(),
              [](const TripletSample& a, const TripletSample& b) { return a.id < b.id; });
    return out;
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
    nlohmann::ordered_json j;
    j["root"] = manifest.root.generic_string();
    j["layout"] = layout_name(manifest.layout);
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const TripletSample& s : manifest.samples) {
        nlohmann::ordered_json e;
        e["id"] = s.id;
        e["first"] = fs::relative(s.first, manifest.root).generic_string();
        e["middle"] = fs::relative(s.middle, manifest.root).generic_string();
        e["last"] = fs::relative(s.last, manifest.root).generic_string();
        if (s.saliency)
            e["saliency"] = s.saliency->generic_string();
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << j.dump(2) << "\n";
}

DatasetManifest load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed manifest " + path.string() + ": " + e.what());
    }

    DatasetManifest manifest;
    manifest.root = fs::path(j.at("root").get<std::string>());
    manifest.layout = parse_layout(j.at("layout").get<std::string>());
    for (const auto& e : j.at("samples")) {
        TripletSample s;
        s.id = e.at("id").get<std::string>();
        s.first = manifest.root / e.at("first").get<std::string>();
        s.middle = manifest.root / e.at("middle").get<std::string>();
        s.last = manifest.root / e.at("last").get<std::string>();
        if (e.contains("saliency")) s.saliency = fs::path(e.at("saliency").get<std::string>());
        manifest.samples.push_back(std::move(s));
    }
    return manifest;
}

}  // namespace vfi
