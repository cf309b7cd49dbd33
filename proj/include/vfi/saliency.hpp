#pragma once

#include <string>

#include "vfi/image.hpp"

namespace vfi {

/// Load a precomputed saliency map (grayscale image), normalize to [0,1] and
/// bilinearly resize to width x height.
MaskMap load_saliency(const std::string& path, int width, int height);

/// Classical spectral-residual saliency: the luma plane is resized to 64x64,
/// mean-removed, transformed with a 2-D DFT; the log-amplitude spectrum
/// (floored at 1e-4 of its peak) minus its 3x3 box-filtered version is
/// re-exponentiated and recombined with the original phase, the inverse
/// transform is squared, Gaussian-smoothed (sigma 2.5), upsampled to full size
/// and max-normalized (an all-zero map stays all-zero, so a constant image
/// maps to the all-zero mask).
MaskMap spectral_saliency(const Frame& frame);

/// M_b = 1 - M_f per pixel.
MaskMap complement(const MaskMap& mask);

/// Hard foreground/background split at a threshold.
MaskMap binarize(const MaskMap& mask, double threshold = 0.5);

}  // namespace vfi
