#pragma once

#include <string>
#include <vector>

namespace vfi {

/// Dense displacement map in pixels: u = x-displacement, v = y-displacement.
/// Pixel p in the source frame maps to p + (u(p), v(p)) in the target frame.
class FlowField {
public:
    FlowField() = default;
    FlowField(int width, int height);
    FlowField(int width, int height, std::vector<float> u, std::vector<float> v);

    int width() const { return width_; }
    int height() const { return height_; }

    float u(int x, int y) const { return u_[static_cast<std::size_t>(y) * width_ + x]; }
    float v(int x, int y) const { return v_[static_cast<std::size_t>(y) * width_ + x]; }
    float& u(int x, int y) { return u_[static_cast<std::size_t>(y) * width_ + x]; }
    float& v(int x, int y) { return v_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<float>& u_data() const { return u_; }
    const std::vector<float>& v_data() const { return v_; }

    bool all_finite() const;
    double mean_magnitude() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> u_;
    std::vector<float> v_;
};

/// Middlebury .flo: 4-byte magic "PIEH", little-endian int32 width and height,
/// then width*height interleaved (u,v) little-endian float32 pairs, row-major.
FlowField load_flo(const std::string& path);
void save_flo(const FlowField& flow, const std::string& path);

/// Multiply every displacement by t (the short-term linear motion assumption:
/// flow to time t is t times the full inter-frame flow). Requires t in [0,1].
FlowField scale_flow(const FlowField& flow, double t);

}  // namespace vfi
