#include "vfi/saliency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

#include "vfi/image_io.hpp"
#include "vfi/imgproc.hpp"

namespace vfi {

namespace {

constexpr int kSpectralSize = 64;

// Shared 64x64 plans, executed on per-call buffers via the new-array interface.
// Plan creation is not thread-safe; execution is.
struct SpectralPlans {
    fftw_plan forward;
    fftw_plan inverse;
};

const SpectralPlans& spectral_plans() {
    static SpectralPlans plans = [] {
        static std::mutex m;
        std::lock_guard<std::mutex> lock(m);
        fftw_complex* buf_in = fftw_alloc_complex(kSpectralSize * kSpectralSize);
        fftw_complex* buf_out = fftw_alloc_complex(kSpectralSize * kSpectralSize);
        SpectralPlans p;
        p.forward = fftw_plan_dft_2d(kSpectralSize, kSpectralSize, buf_in, buf_out,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
        p.inverse = fftw_plan_dft_2d(kSpectralSize, kSpectralSize, buf_in, buf_out,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_free(buf_in);
        fftw_free(buf_out);
        return p;
    }();
    return plans;
}

struct FftwBuffer {
    fftw_complex* data;
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

}  // namespace

MaskMap load_saliency(const std::string& path, int width, int height) {
    MaskMap native = load_mask(path);
    if (native.width() == width && native.height() == height) return native;
    std::vector<float> resized =
        resize_bilinear_plane(native.data(), native.width(), native.height(), width, height);
    for (float& v : resized) v = std::clamp(v, 0.0f, 1.0f);
    return MaskMap(width, height, std::move(resized));
}

MaskMap spectral_saliency(const Frame& frame) {
    if (frame.empty()) throw std::invalid_argument("spectral_saliency: empty frame");
    const int n = kSpectralSize;
    const std::size_t total = static_cast<std::size_t>(n) * n;

    std::vector<float> small = resize_bilinear_plane(to_luma(frame), frame.width(),
                                                     frame.height(), n, n);
    double mean = 0.0;
    for (float v : small) mean += v;
    mean /= static_cast<double>(total);

    FftwBuffer in(total), spec(total);
    for (std::size_t i = 0; i < total; ++i) {
        in.data[i][0] = small[i] - mean;
        in.data[i][1] = 0.0;
    }
    fftw_execute_dft(spectral_plans().forward, in.data, spec.data);

    std::vector<double> amp(total), phase(total);
    double amp_max = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        amp[i] = std::hypot(spec.data[i][0], spec.data[i][1]);
        phase[i] = std::atan2(spec.data[i][1], spec.data[i][0]);
        amp_max = std::max(amp_max, amp[i]);
    }
    if (amp_max == 0.0)  // constant input: no residual energy
        return MaskMap(frame.width(), frame.height(), 0.0f);

    // Spectral nulls of synthetic inputs would dominate the residual through
    // the log; a floor relative to the peak amplitude keeps them inert and
    // keeps the map invariant under intensity scaling.
    const double amp_floor = 1e-4 * amp_max;
    std::vector<float> log_amp(total);
    for (std::size_t i = 0; i < total; ++i)
        log_amp[i] = static_cast<float>(std::log(std::max(amp[i], amp_floor)));
    const std::vector<float> smoothed = box_mean_plane(log_amp, n, n, 1);

    FftwBuffer residual_spec(total), recon(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double a = std::exp(static_cast<double>(log_amp[i]) - smoothed[i]);
        residual_spec.data[i][0] = a * std::cos(phase[i]);
        residual_spec.data[i][1] = a * std::sin(phase[i]);
    }
    fftw_execute_dft(spectral_plans().inverse, residual_spec.data, recon.data);

    std::vector<float> map(total);
    for (std::size_t i = 0; i < total; ++i)
        map[i] = static_cast<float>(recon.data[i][0] * recon.data[i][0] +
                                    recon.data[i][1] * recon.data[i][1]);
    map = gaussian_blur_plane(map, n, n, 2.5);
    map = resize_bilinear_plane(map, n, n, frame.width(), frame.height());

    float peak = 0.0f;
    for (float v : map) peak = std::max(peak, v);
    if (peak > 0.0f)
        for (float& v : map) v = std::clamp(v / peak, 0.0f, 1.0f);
    return MaskMap(frame.width(), frame.height(), std::move(map));
}

MaskMap complement(const MaskMap& mask) {
    std::vector<float> out(mask.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0f - mask.data()[i];
    return MaskMap(mask.width(), mask.height(), std::move(out));
}

MaskMap binarize(const MaskMap& mask, double threshold) {
    std::vector<float> out(mask.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mask.data()[i] >= threshold ? 1.0f : 0.0f;
    return MaskMap(mask.width(), mask.height(), std::move(out));
}

}  // namespace vfi
