#pragma once

#include <vector>

#include "vfi/image.hpp"

namespace vfi {

/// Separable Gaussian blur with replicate borders, kernel radius ceil(3*sigma).
/// sigma <= 0 returns the input unchanged.
std::vector<float> gaussian_blur_plane(const std::vector<float>& src, int width, int height,
                                       double sigma);

/// Separable box mean over a (2*radius+1)^2 window clipped at the borders and
/// normalized by the in-image count, so constants are preserved exactly.
std::vector<float> box_mean_plane(const std::vector<float>& src, int width, int height,
                                  int radius);

/// Bilinear resize with pixel-center alignment and replicate borders.
std::vector<float> resize_bilinear_plane(const std::vector<float>& src, int width, int height,
                                         int new_width, int new_height);

Frame resize_bilinear(const Frame& src, int new_width, int new_height);

}  // namespace vfi
