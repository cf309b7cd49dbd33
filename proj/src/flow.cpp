#include "vfi/flow.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "vfi/error.hpp"

namespace vfi {

namespace {

constexpr char kFloMagic[4] = {'P', 'I', 'E', 'H'};

struct FileCloser {
    FILE* fp = nullptr;
    ~FileCloser() {
        if (fp) std::fclose(fp);
    }
};

// .flo is little-endian on disk; this code assumes a little-endian host, which
// covers every platform this project targets.
static_assert(sizeof(float) == 4 && sizeof(std::int32_t) == 4);

}  // namespace

FlowField::FlowField(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("flow dimensions must be positive");
    u_.assign(static_cast<std::size_t>(width) * height, 0.0f);
    v_.assign(static_cast<std::size_t>(width) * height, 0.0f);
}

FlowField::FlowField(int width, int height, std::vector<float> u, std::vector<float> v)
    : width_(width), height_(height), u_(std::move(u)), v_(std::move(v)) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("flow dimensions must be positive");
    const std::size_t expected = static_cast<std::size_t>(width) * height;
    if (u_.size() != expected || v_.size() != expected)
        throw std::invalid_argument("flow component length does not match dimensions");
}

bool FlowField::all_finite() const {
    for (float x : u_)
        if (!std::isfinite(x)) return false;
    for (float x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

double FlowField::mean_magnitude() const {
    if (u_.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < u_.size(); ++i)
        acc += std::sqrt(static_cast<double>(u_[i]) * u_[i] +
                         static_cast<double>(v_[i]) * v_[i]);
    return acc / static_cast<double>(u_.size());
}

FlowField load_flo(const std::string& path) {
    FileCloser f;
    f.fp = std::fopen(path.c_str(), "rb");
    if (!f.fp) throw IoError("cannot open flow file: " + path);

    char magic[4];
    if (std::fread(magic, 1, 4, f.fp) != 4 || std::memcmp(magic, kFloMagic, 4) != 0)
        throw IoError(path + ": bad .flo magic (expected \"PIEH\")");

    std::int32_t width = 0, height = 0;
    if (std::fread(&width, 4, 1, f.fp) != 1 || std::fread(&height, 4, 1, f.fp) != 1)
        throw IoError(path + ": truncated .flo header");
    if (width <= 0 || height <= 0 || width > 99999 || height > 99999)
        throw IoError(path + ": implausible .flo dimensions " + std::to_string(width) + "x" +
                      std::to_string(height));

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<float> interleaved(n * 2);
    if (std::fread(interleaved.data(), 4, n * 2, f.fp) != n * 2)
        throw IoError(path + ": .flo payload shorter than header promises");
    if (std::fgetc(f.fp) != EOF)
        throw IoError(path + ": .flo payload longer than header promises");

    std::vector<float> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = interleaved[2 * i];
        v[i] = interleaved[2 * i + 1];
    }
    return FlowField(width, height, std::move(u), std::move(v));
}

void save_flo(const FlowField& flow, const std::string& path) {
    if (flow.width() == 0) throw std::invalid_argument("save_flo: empty flow");
    FileCloser f;
    f.fp = std::fopen(path.c_str(), "wb");
    if (!f.fp) throw IoError("cannot open file for writing: " + path);

    const std::int32_t width = flow.width();
    const std::int32_t height = flow.height();
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<float> interleaved(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        interleaved[2 * i] = flow.u_data()[i];
        interleaved[2 * i + 1] = flow.v_data()[i];
    }

    if (std::fwrite(kFloMagic, 1, 4, f.fp) != 4 || std::fwrite(&width, 4, 1, f.fp) != 1 ||
        std::fwrite(&height, 4, 1, f.fp) != 1 ||
        std::fwrite(interleaved.data(), 4, n * 2, f.fp) != n * 2)
        throw IoError("short write to flow file: " + path);
}

FlowField scale_flow(const FlowField& flow, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("scale_flow: t must be in [0,1], got " + std::to_string(t));
    const std::size_t n = flow.u_data().size();
    std::vector<float> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = static_cast<float>(flow.u_data()[i] * t);
        v[i] = static_cast<float>(flow.v_data()[i] * t);
    }
    return FlowField(flow.width(), flow.height(), std::move(u), std::move(v));
}

}  // namespace vfi
