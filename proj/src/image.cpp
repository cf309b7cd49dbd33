#include "vfi/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vfi {

namespace {

void check_dims(int width, int height, int channels) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("channel count must be 1 or 3, got " +
                                    std::to_string(channels));
}

}  // namespace

Frame::Frame(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Frame::Frame(int width, int height, int channels, std::vector<float> samples)
    : width_(width), height_(height), channels_(channels), data_(std::move(samples)) {
    check_dims(width, height, channels);
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if (data_.size() != expected)
        throw std::invalid_argument("frame data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height) + "x" + std::to_string(channels));
}

MaskMap::MaskMap(int width, int height, float fill) : width_(width), height_(height) {
    check_dims(width, height, 1);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

MaskMap::MaskMap(int width, int height, std::vector<float> weights)
    : width_(width), height_(height), data_(std::move(weights)) {
    check_dims(width, height, 1);
    if (data_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("mask data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
}

bool MaskMap::in_range() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](float w) { return w >= 0.0f && w <= 1.0f; });
}

HoleMask::HoleMask(int width, int height, bool fill) : width_(width), height_(height) {
    check_dims(width, height, 1);
    data_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t HoleMask::count() const {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

std::array<float, 3> sample_bilinear(const Frame& frame, double x, double y) {
    const int w = frame.width();
    const int h = frame.height();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));

    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;

    std::array<float, 3> out{0.0f, 0.0f, 0.0f};
    for (int c = 0; c < frame.channels(); ++c) {
        const double top = frame.at(x0, y0, c) * (1.0 - fx) + frame.at(x1, y0, c) * fx;
        const double bot = frame.at(x0, y1, c) * (1.0 - fx) + frame.at(x1, y1, c) * fx;
        out[c] = static_cast<float>(top * (1.0 - fy) + bot * fy);
    }
    return out;
}

std::vector<float> to_luma(const Frame& frame) {
    const std::size_t n = static_cast<std::size_t>(frame.width()) * frame.height();
    std::vector<float> luma(n);
    if (frame.channels() == 1) {
        luma = frame.data();
        return luma;
    }
    const std::vector<float>& d = frame.data();
    for (std::size_t i = 0; i < n; ++i) {
        luma[i] = static_cast<float>(0.299 * d[3 * i] + 0.587 * d[3 * i + 1] +
                                     0.114 * d[3 * i + 2]);
    }
    return luma;
}

void require_same_shape(const Frame& a, const Frame& b, const std::string& what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(what + ": shape mismatch, " + std::to_string(a.width()) +
                                    "x" + std::to_string(a.height()) + "x" +
                                    std::to_string(a.channels()) + " vs " +
                                    std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                                    "x" + std::to_string(b.channels()));
}

}  // namespace vfi
