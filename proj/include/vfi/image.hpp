#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace vfi {

/// Row-major, channel-interleaved image. Samples live in [0,1]; loaders
/// normalize on read and savers quantize on write. 1 channel = gray, 3 = RGB.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, int channels, float fill = 0.0f);
    Frame(int width, int height, int channels, std::vector<float> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t sample_count() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    float at(int x, int y, int c) const { return data_[index(x, y, c)]; }
    float& at(int x, int y, int c) { return data_[index(x, y, c)]; }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    bool same_shape(const Frame& o) const {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }

private:
    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

/// Per-pixel weight map in [0,1]. Holds attention/contribution weights and
/// saliency masks.
class MaskMap {
public:
    MaskMap() = default;
    MaskMap(int width, int height, float fill = 0.0f);
    MaskMap(int width, int height, std::vector<float> weights);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return data_.size(); }

    float at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    float& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    /// True if every weight is within [0,1].
    bool in_range() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Binary per-pixel map; true marks a pixel with no splat coverage.
class HoleMask {
public:
    HoleMask() = default;
    HoleMask(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool hole) {
        data_[static_cast<std::size_t>(y) * width_ + x] = hole ? 1 : 0;
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    std::size_t count() const;  // number of hole pixels
    bool any() const { return count() > 0; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Bilinear sample at a subpixel position. Coordinates are clamped to the
/// image border (replicate padding); integer in-bounds coordinates return the
/// pixel exactly. Unused channels of the result are zero.
std::array<float, 3> sample_bilinear(const Frame& frame, double x, double y);

/// Rec.601 luma plane in [0,1]; gray frames pass through.
std::vector<float> to_luma(const Frame& frame);

void require_same_shape(const Frame& a, const Frame& b, const std::string& what);

}  // namespace vfi
