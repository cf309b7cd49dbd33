#pragma once

#include <optional>
#include <string>

#include "vfi/image.hpp"

namespace vfi {

/// One evaluated sample, mirroring the report columns
/// PSNR, F-PSNR, B-PSNR, IE, F-IE, B-IE, SSIM.
/// A metric is nullopt when its mask region is empty; PSNR values are +inf when
/// the masked MSE is zero.
struct EvalRecord {
    std::string sample_id;
    std::optional<double> psnr, f_psnr, b_psnr;
    std::optional<double> ie, f_ie, b_ie;
    std::optional<double> ssim;
};

/// Saliency-weighted mean absolute difference on the 0-255 scale:
/// sum_p M(p) * |gen(p) - gt(p)| / sum_p M(p), the per-pixel difference being
/// the channel mean. Throws if the mask sums to zero.
double masked_ie(const Frame& gen, const Frame& gt, const MaskMap& mask);

/// Same weighting with squared channel-mean differences (0-255 scale).
double masked_mse(const Frame& gen, const Frame& gt, const MaskMap& mask);

/// 10*log10(255^2 / masked_mse); +infinity when the masked MSE is zero.
double masked_psnr(const Frame& gen, const Frame& gt, const MaskMap& mask);

/// Mean local SSIM on luma, 11x11 Gaussian window (sigma 1.5), K1=0.01,
/// K2=0.03, dynamic range 255, averaged over positions where the window fits.
double ssim(const Frame& gen, const Frame& gt);

/// Charbonnier penalty mean(sqrt(d^2 + c)) over all samples, d on the [0,1]
/// scale. The optional mask restricts the average saliency-style.
double charbonnier(const Frame& gen, const Frame& gt, double c = 1e-6,
                   const MaskMap* mask = nullptr);

/// Whole-frame metrics with an all-ones mask, F-metrics under saliency_f,
/// B-metrics under 1 - saliency_f. Empty regions leave the corresponding
/// fields unset.
EvalRecord evaluate_sample(const Frame& gen, const Frame& gt, const MaskMap& saliency_f,
                           std::string sample_id = "");

/// CSV serialization. Header: sample,PSNR,F-PSNR,B-PSNR,IE,F-IE,B-IE,SSIM.
/// Infinite PSNR prints "inf"; unset fields print "null".
std::string eval_csv_header();
std::string eval_csv_row(const EvalRecord& record);

/// Single JSON object keyed by the seven column names (no sample id).
/// Infinite PSNR serializes as the string "inf", unset fields as null.
std::string eval_json(const EvalRecord& record);

}  // namespace vfi
