#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "vfi/flow.hpp"
#include "vfi/image.hpp"

namespace testutil {

// mt19937_64 is bit-portable; the scaling below avoids the
// implementation-defined std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Weight of the form k / 2^bits: its complement 1-w is exactly
    // representable, which the bitwise identity tests rely on.
    float dyadic(int bits = 10) {
        const std::uint64_t k = eng_() & ((1ull << bits) - 1);
        return static_cast<float>(static_cast<double>(k) / static_cast<double>(1ull << bits));
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

inline vfi::Frame random_frame(int w, int h, int c, Rng& rng) {
    vfi::Frame f(w, h, c);
    for (float& v : f.data()) v = static_cast<float>(rng.uniform());
    return f;
}

inline vfi::MaskMap random_mask(int w, int h, Rng& rng) {
    vfi::MaskMap m(w, h);
    for (float& v : m.data()) v = static_cast<float>(rng.uniform());
    return m;
}

inline vfi::MaskMap random_dyadic_mask(int w, int h, Rng& rng) {
    vfi::MaskMap m(w, h);
    for (float& v : m.data()) v = rng.dyadic();
    return m;
}

// Periodic smooth texture: white noise blurred with wrap-around so circular
// shifts of it satisfy brightness constancy exactly, making the shift the
// ground-truth flow everywhere.
inline vfi::Frame smooth_periodic_texture(int w, int h, std::uint64_t seed,
                                          double sigma = 3.0) {
    Rng rng(seed);
    std::vector<double> noise(static_cast<std::size_t>(w) * h);
    for (double& v : noise) v = rng.uniform();

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        ksum += kernel[i + radius];
    }
    for (double& v : kernel) v /= ksum;

    std::vector<double> tmp(noise.size()), smooth(noise.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * noise[static_cast<std::size_t>(y) * w +
                                                  ((x + i) % w + w) % w];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp[static_cast<std::size_t>(((y + i) % h + h) % h) * w + x];
            smooth[static_cast<std::size_t>(y) * w + x] = acc;
        }

    double lo = smooth[0], hi = smooth[0];
    for (double v : smooth) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    vfi::Frame out(w, h, 1);
    for (std::size_t i = 0; i < smooth.size(); ++i)
        out.data()[i] = static_cast<float>(0.1 + 0.8 * (smooth[i] - lo) / (hi - lo));
    return out;
}

inline vfi::Frame circular_shift(const vfi::Frame& src, int dx, int dy) {
    vfi::Frame out(src.width(), src.height(), src.channels());
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x) {
            const int sx = ((x - dx) % src.width() + src.width()) % src.width();
            const int sy = ((y - dy) % src.height() + src.height()) % src.height();
            for (int c = 0; c < src.channels(); ++c)
                out.at(x, y, c) = src.at(sx, sy, c);
        }
    return out;
}

// Plain PSNR over an inset region ([0,1] samples, 0-255 convention).
inline double psnr_region(const vfi::Frame& a, const vfi::Frame& b, double inset_fraction) {
    const int ix = static_cast<int>(a.width() * inset_fraction / 2.0);
    const int iy = static_cast<int>(a.height() * inset_fraction / 2.0);
    double sq = 0.0;
    std::size_t n = 0;
    for (int y = iy; y < a.height() - iy; ++y)
        for (int x = ix; x < a.width() - ix; ++x)
            for (int c = 0; c < a.channels(); ++c) {
                const double d = 255.0 * (static_cast<double>(a.at(x, y, c)) - b.at(x, y, c));
                sq += d * d;
                ++n;
            }
    const double mse = sq / static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

// Mean endpoint error against a constant ground-truth displacement over the
// central region covering `fraction` of each axis.
inline double mean_epe_central(const vfi::FlowField& flow, double gt_u, double gt_v,
                               double fraction) {
    const int ix = static_cast<int>(flow.width() * (1.0 - fraction) / 2.0);
    const int iy = static_cast<int>(flow.height() * (1.0 - fraction) / 2.0);
    double acc = 0.0;
    std::size_t n = 0;
    for (int y = iy; y < flow.height() - iy; ++y)
        for (int x = ix; x < flow.width() - ix; ++x) {
            const double du = flow.u(x, y) - gt_u;
            const double dv = flow.v(x, y) - gt_v;
            acc += std::sqrt(du * du + dv * dv);
            ++n;
        }
    return acc / static_cast<double>(n);
}

// Unique scratch directory under the system temp dir, removed by the caller.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("vfi_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
