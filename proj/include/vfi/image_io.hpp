#pragma once

#include <string>

#include "vfi/image.hpp"

namespace vfi {

/// Load a PNG (8/16-bit, gray or RGB, alpha dropped) or binary PPM/PGM file.
/// Samples are normalized to [0,1] by the format's max value.
/// Throws IoError on unreadable files or unsupported properties.
Frame load_frame(const std::string& path);

/// Write an 8-bit PNG (gray for 1 channel, RGB for 3). Samples are encoded as
/// round-half-up(s * 255) clamped to [0,255].
void save_frame(const Frame& frame, const std::string& path);

/// Grayscale image file -> weights in [0,1] at native resolution. RGB input is
/// collapsed to luma.
MaskMap load_mask(const std::string& path);
void save_mask(const MaskMap& mask, const std::string& path);

/// Hole masks persist as 8-bit gray PNG, 255 = hole. Loading treats >= 128 as hole.
HoleMask load_hole_mask(const std::string& path);
void save_hole_mask(const HoleMask& holes, const std::string& path);

}  // namespace vfi
