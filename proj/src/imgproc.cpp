#include "vfi/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vfi {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

// 1-D convolution along x with replicate borders.
void convolve_rows(const std::vector<float>& src, std::vector<float>& dst, int width, int height,
                   const std::vector<double>& k) {
    const int radius = static_cast<int>(k.size() / 2);
    for (int y = 0; y < height; ++y) {
        const float* row = &src[static_cast<std::size_t>(y) * width];
        float* out = &dst[static_cast<std::size_t>(y) * width];
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int xi = std::clamp(x + i, 0, width - 1);
                acc += k[i + radius] * row[xi];
            }
            out[x] = static_cast<float>(acc);
        }
    }
}

void convolve_cols(const std::vector<float>& src, std::vector<float>& dst, int width, int height,
                   const std::vector<double>& k) {
    const int radius = static_cast<int>(k.size() / 2);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int yi = std::clamp(y + i, 0, height - 1);
                acc += k[i + radius] * src[static_cast<std::size_t>(yi) * width + x];
            }
            dst[static_cast<std::size_t>(y) * width + x] = static_cast<float>(acc);
        }
    }
}

}  // namespace

std::vector<float> gaussian_blur_plane(const std::vector<float>& src, int width, int height,
                                       double sigma) {
    if (sigma <= 0.0) return src;
    const std::vector<double> k = gaussian_kernel(sigma);
    std::vector<float> tmp(src.size());
    std::vector<float> dst(src.size());
    convolve_rows(src, tmp, width, height, k);
    convolve_cols(tmp, dst, width, height, k);
    return dst;
}

std::vector<float> box_mean_plane(const std::vector<float>& src, int width, int height,
                                  int radius) {
    if (radius <= 0) return src;
    std::vector<float> tmp(src.size());
    std::vector<float> dst(src.size());
    // Clipped counts depend on one axis each, so two normalized 1-D passes
    // compose to the exact 2-D clipped mean.
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const int x0 = std::max(0, x - radius);
            const int x1 = std::min(width - 1, x + radius);
            double acc = 0.0;
            for (int xi = x0; xi <= x1; ++xi)
                acc += src[static_cast<std::size_t>(y) * width + xi];
            tmp[static_cast<std::size_t>(y) * width + x] =
                static_cast<float>(acc / (x1 - x0 + 1));
        }
    }
    for (int y = 0; y < height; ++y) {
        const int y0 = std::max(0, y - radius);
        const int y1 = std::min(height - 1, y + radius);
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int yi = y0; yi <= y1; ++yi)
                acc += tmp[static_cast<std::size_t>(yi) * width + x];
            dst[static_cast<std::size_t>(y) * width + x] =
                static_cast<float>(acc / (y1 - y0 + 1));
        }
    }
    return dst;
}

std::vector<float> resize_bilinear_plane(const std::vector<float>& src, int width, int height,
                                         int new_width, int new_height) {
    if (new_width <= 0 || new_height <= 0)
        throw std::invalid_argument("resize target must be positive");
    if (new_width == width && new_height == height) return src;

    std::vector<float> dst(static_cast<std::size_t>(new_width) * new_height);
    const double sx = static_cast<double>(width) / new_width;
    const double sy = static_cast<double>(height) / new_height;
    for (int y = 0; y < new_height; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(height - 1));
        const int y0 = static_cast<int>(std::floor(fy));
        const int y1 = std::min(y0 + 1, height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < new_width; ++x) {
            const double fx =
                std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(width - 1));
            const int x0 = static_cast<int>(std::floor(fx));
            const int x1 = std::min(x0 + 1, width - 1);
            const double wx = fx - x0;
            const double top = src[static_cast<std::size_t>(y0) * width + x0] * (1.0 - wx) +
                               src[static_cast<std::size_t>(y0) * width + x1] * wx;
            const double bot = src[static_cast<std::size_t>(y1) * width + x0] * (1.0 - wx) +
                               src[static_cast<std::size_t>(y1) * width + x1] * wx;
            dst[static_cast<std::size_t>(y) * new_width + x] =
                static_cast<float>(top * (1.0 - wy) + bot * wy);
        }
    }
    return dst;
}

Frame resize_bilinear(const Frame& src, int new_width, int new_height) {
    if (src.width() == new_width && src.height() == new_height) return src;
    Frame dst(new_width, new_height, src.channels());
    for (int c = 0; c < src.channels(); ++c) {
        std::vector<float> plane(static_cast<std::size_t>(src.width()) * src.height());
        for (int y = 0; y < src.height(); ++y)
            for (int x = 0; x < src.width(); ++x)
                plane[static_cast<std::size_t>(y) * src.width() + x] = src.at(x, y, c);
        std::vector<float> out =
            resize_bilinear_plane(plane, src.width(), src.height(), new_width, new_height);
        for (int y = 0; y < new_height; ++y)
            for (int x = 0; x < new_width; ++x)
                dst.at(x, y, c) = out[static_cast<std::size_t>(y) * new_width + x];
    }
    return dst;
}

}  // namespace vfi
