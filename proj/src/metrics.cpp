#include "vfi/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "vfi/saliency.hpp"

namespace vfi {

namespace {

// Accumulate sum(mask * f(channel-mean diff)) and sum(mask) on the 0-255 scale.
template <typename DiffFn>
double masked_mean(const Frame& gen, const Frame& gt, const MaskMap& mask, DiffFn diff,
                   const char* what) {
    require_same_shape(gen, gt, what);
    if (gen.width() != mask.width() || gen.height() != mask.height())
        throw std::invalid_argument(std::string(what) + ": mask dimensions mismatch");

    const int ch = gen.channels();
    const std::size_t n = mask.pixel_count();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = mask.data()[i];
        double d = 0.0;
        for (int c = 0; c < ch; ++c)
            d += diff(255.0 * (static_cast<double>(gen.data()[i * ch + c]) -
                               gt.data()[i * ch + c]));
        num += m * (d / ch);
        den += m;
    }
    if (den <= 0.0)
        throw std::invalid_argument(std::string(what) + ": mask sums to zero, region undefined");
    return num / den;
}

std::string format_metric(const std::optional<double>& v, const char* fmt) {
    if (!v) return "null";
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, *v);
    return buf;
}

nlohmann::ordered_json json_metric(const std::optional<double>& v) {
    if (!v) return nullptr;
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    return *v;
}

}  // namespace

double masked_ie(const Frame& gen, const Frame& gt, const MaskMap& mask) {
    return masked_mean(gen, gt, mask, [](double d) { return std::abs(d); }, "masked_ie");
}

double masked_mse(const Frame& gen, const Frame& gt, const MaskMap& mask) {
    return masked_mean(gen, gt, mask, [](double d) { return d * d; }, "masked_mse");
}

double masked_psnr(const Frame& gen, const Frame& gt, const MaskMap& mask) {
    const double mse = masked_mse(gen, gt, mask);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const Frame& gen, const Frame& gt) {
    require_same_shape(gen, gt, "ssim");
    constexpr int kWindow = 11;
    constexpr int kRadius = kWindow / 2;
    constexpr double kSigma = 1.5;
    constexpr double kL = 255.0;
    constexpr double kC1 = (0.01 * kL) * (0.01 * kL);
    constexpr double kC2 = (0.03 * kL) * (0.03 * kL);

    const int w = gen.width();
    const int h = gen.height();
    if (w < kWindow || h < kWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window, " +
                                    std::to_string(w) + "x" + std::to_string(h));

    std::vector<float> a = to_luma(gen);
    std::vector<float> b = to_luma(gt);
    for (float& v : a) v *= 255.0f;
    for (float& v : b) v *= 255.0f;

    double kernel[kWindow][kWindow];
    double ksum = 0.0;
    for (int dy = -kRadius; dy <= kRadius; ++dy)
        for (int dx = -kRadius; dx <= kRadius; ++dx) {
            kernel[dy + kRadius][dx + kRadius] =
                std::exp(-0.5 * (dx * dx + dy * dy) / (kSigma * kSigma));
            ksum += kernel[dy + kRadius][dx + kRadius];
        }
    for (auto& row : kernel)
        for (double& v : row) v /= ksum;

    double total = 0.0;
    std::size_t count = 0;
    for (int y = kRadius; y < h - kRadius; ++y) {
        for (int x = kRadius; x < w - kRadius; ++x) {
            double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
            for (int dy = -kRadius; dy <= kRadius; ++dy) {
                for (int dx = -kRadius; dx <= kRadius; ++dx) {
                    const double k = kernel[dy + kRadius][dx + kRadius];
                    const double va = a[static_cast<std::size_t>(y + dy) * w + (x + dx)];
                    const double vb = b[static_cast<std::size_t>(y + dy) * w + (x + dx)];
                    mu_a += k * va;
                    mu_b += k * vb;
                    aa += k * va * va;
                    bb += k * vb * vb;
                    ab += k * va * vb;
                }
            }
            const double var_a = aa - mu_a * mu_a;
            const double var_b = bb - mu_b * mu_b;
            const double cov = ab - mu_a * mu_b;
            const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
            const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

double charbonnier(const Frame& gen, const Frame& gt, double c, const MaskMap* mask) {
    require_same_shape(gen, gt, "charbonnier");
    if (!(c > 0.0)) throw std::invalid_argument("charbonnier: c must be positive");
    const int ch = gen.channels();
    const std::size_t n = static_cast<std::size_t>(gen.width()) * gen.height();
    if (mask && (mask->width() != gen.width() || mask->height() != gen.height()))
        throw std::invalid_argument("charbonnier: mask dimensions mismatch");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = mask ? mask->data()[i] : 1.0;
        for (int c_i = 0; c_i < ch; ++c_i) {
            const double d =
                static_cast<double>(gen.data()[i * ch + c_i]) - gt.data()[i * ch + c_i];
            num += m * std::sqrt(d * d + c);
            den += m;
        }
    }
    if (den <= 0.0) throw std::invalid_argument("charbonnier: mask sums to zero");
    return num / den;
}

EvalRecord evaluate_sample(const Frame& gen, const Frame& gt, const MaskMap& saliency_f,
                           std::string sample_id) {
    require_same_shape(gen, gt, "evaluate_sample");
    if (saliency_f.width() != gen.width() || saliency_f.height() != gen.height())
        throw std::invalid_argument("evaluate_sample: saliency dimensions mismatch");

    EvalRecord r;
    r.sample_id = std::move(sample_id);
    const MaskMap whole(gen.width(), gen.height(), 1.0f);
    const MaskMap background = complement(saliency_f);

    r.ie = masked_ie(gen, gt, whole);
    r.psnr = masked_psnr(gen, gt, whole);
    r.ssim = ssim(gen, gt);

    auto region = [&](const MaskMap& m, std::optional<double>& ie_out,
                      std::optional<double>& psnr_out) {
        double sum = 0.0;
        for (float v : m.data()) sum += v;
        if (sum <= 0.0) return;  // empty region: metrics stay unset
        ie_out = masked_ie(gen, gt, m);
        psnr_out = masked_psnr(gen, gt, m);
    };
    region(saliency_f, r.f_ie, r.f_psnr);
    region(background, r.b_ie, r.b_psnr);
    return r;
}

std::string eval_csv_header() { return "sample,PSNR,F-PSNR,B-PSNR,IE,F-IE,B-IE,SSIM"; }

std::string eval_csv_row(const EvalRecord& r) {
    std::string row = r.sample_id;
    for (const auto* v : {&r.psnr, &r.f_psnr, &r.b_psnr, &r.ie, &r.f_ie, &r.b_ie, &r.ssim}) {
        row += ',';
        row += format_metric(*v, "%.6f");
    }
    return row;
}

std::string eval_json(const EvalRecord& r) {
    nlohmann::ordered_json j;
    j["PSNR"] = json_metric(r.psnr);
    j["F-PSNR"] = json_metric(r.f_psnr);
    j["B-PSNR"] = json_metric(r.b_psnr);
    j["IE"] = json_metric(r.ie);
    j["F-IE"] = json_metric(r.f_ie);
    j["B-IE"] = json_metric(r.b_ie);
    j["SSIM"] = json_metric(r.ssim);
    return j.dump();
}

}  // namespace vfi
