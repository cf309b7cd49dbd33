#include "vfi/flow_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vfi/imgproc.hpp"

namespace vfi {

namespace {

constexpr double kPresmoothSigma = 1.0;
constexpr int kMinPyramidDim = 4;

struct Level {
    int width = 0;
    int height = 0;
    std::vector<float> luma;  // 0-255 scale
};

std::vector<float> to_luma255(const Frame& frame) {
    std::vector<float> luma = to_luma(frame);
    for (float& v : luma) v *= 255.0f;
    return luma;
}

std::vector<Level> build_pyramid(std::vector<float> luma, int width, int height,
                                 const FlowParams& params) {
    std::vector<Level> pyr;
    pyr.push_back({width, height, std::move(luma)});
    const double aa_sigma = 0.5 / params.downscale_factor;
    for (int l = 1; l < params.pyramid_levels; ++l) {
        const Level& prev = pyr.back();
        const int nw = std::max(kMinPyramidDim,
                                static_cast<int>(std::lround(prev.width * params.downscale_factor)));
        const int nh = std::max(kMinPyramidDim,
                                static_cast<int>(std::lround(prev.height * params.downscale_factor)));
        if (nw >= prev.width || nh >= prev.height) break;
        std::vector<float> blurred =
            gaussian_blur_plane(prev.luma, prev.width, prev.height, aa_sigma);
        pyr.push_back({nw, nh, resize_bilinear_plane(blurred, prev.width, prev.height, nw, nh)});
    }
    return pyr;
}

double sample_plane(const std::vector<float>& p, int width, int height, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = p[static_cast<std::size_t>(y0) * width + x0] * (1.0 - fx) +
                       p[static_cast<std::size_t>(y0) * width + x1] * fx;
    const double bot = p[static_cast<std::size_t>(y1) * width + x0] * (1.0 - fx) +
                       p[static_cast<std::size_t>(y1) * width + x1] * fx;
    return top * (1.0 - fy) + bot * fy;
}

// Discrete energy of the linearized problem; data term at the current flow
// relative to the linearization base, smoothness over 4-neighbor edges
// (each edge counted once).
double hs_energy(const std::vector<double>& u, const std::vector<double>& v,
                 const std::vector<double>& base_u, const std::vector<double>& base_v,
                 const std::vector<double>& ix, const std::vector<double>& iy,
                 const std::vector<double>& it, int width, int height, double alpha2) {
    double data = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = ix[i] * (u[i] - base_u[i]) + iy[i] * (v[i] - base_v[i]) + it[i];
        data += r * r;
    }
    double smooth = 0.0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            if (x + 1 < width) {
                const double du = u[i] - u[i + 1];
                const double dv = v[i] - v[i + 1];
                smooth += du * du + dv * dv;
            }
            if (y + 1 < height) {
                const double du = u[i] - u[i + width];
                const double dv = v[i] - v[i + width];
                smooth += du * du + dv * dv;
            }
        }
    }
    return data + alpha2 * smooth;
}

// One coarse-to-fine level: warp b by the incoming flow, linearize, then run
// simultaneous-update sweeps where each pixel solves its 2x2 normal equations
// exactly against the neighbors' previous-sweep values.
void solve_level(const Level& a, const Level& b, std::vector<double>& u, std::vector<double>& v,
                 const FlowParams& params, FlowLevelTrace* trace) {
    const int width = a.width;
    const int height = a.height;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const double alpha2 = params.smoothness_alpha * params.smoothness_alpha;

    const std::vector<float> as = gaussian_blur_plane(a.luma, width, height, kPresmoothSigma);
    const std::vector<float> bs = gaussian_blur_plane(b.luma, width, height, kPresmoothSigma);

    std::vector<double> warped(n), avg(n);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            warped[i] = sample_plane(bs, width, height, x + u[i], y + v[i]);
            avg[i] = 0.5 * (as[i] + warped[i]);
        }
    }

    std::vector<double> ix(n), iy(n), it(n);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            const int xm = std::max(x - 1, 0), xp = std::min(x + 1, width - 1);
            const int ym = std::max(y - 1, 0), yp = std::min(y + 1, height - 1);
            ix[i] = 0.5 * (avg[static_cast<std::size_t>(y) * width + xp] -
                           avg[static_cast<std::size_t>(y) * width + xm]);
            iy[i] = 0.5 * (avg[static_cast<std::size_t>(yp) * width + x] -
                           avg[static_cast<std::size_t>(ym) * width + x]);
            it[i] = warped[i] - as[i];
        }
    }

    const std::vector<double> base_u = u;
    const std::vector<double> base_v = v;

    if (trace) {
        trace->width = width;
        trace->height = height;
        trace->energy.push_back(
            hs_energy(u, v, base_u, base_v, ix, iy, it, width, height, alpha2));
    }

    std::vector<double> nu(n), nv(n);
    for (int sweep = 0; sweep < params.iterations_per_level; ++sweep) {
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * width + x;
                double sum_u = 0.0, sum_v = 0.0;
                int deg = 0;
                if (x > 0) { sum_u += u[i - 1]; sum_v += v[i - 1]; ++deg; }
                if (x + 1 < width) { sum_u += u[i + 1]; sum_v += v[i + 1]; ++deg; }
                if (y > 0) { sum_u += u[i - width]; sum_v += v[i - width]; ++deg; }
                if (y + 1 < height) { sum_u += u[i + width]; sum_v += v[i + width]; ++deg; }

                const double gx = ix[i], gy = iy[i];
                const double m00 = gx * gx + alpha2 * deg;
                const double m01 = gx * gy;
                const double m11 = gy * gy + alpha2 * deg;
                const double b0 =
                    gx * gx * base_u[i] + m01 * base_v[i] - gx * it[i] + alpha2 * sum_u;
                const double b1 =
                    m01 * base_u[i] + gy * gy * base_v[i] - gy * it[i] + alpha2 * sum_v;
                const double det = m00 * m11 - m01 * m01;
                nu[i] = (m11 * b0 - m01 * b1) / det;
                nv[i] = (m00 * b1 - m01 * b0) / det;
            }
        }
        u.swap(nu);
        v.swap(nv);
        if (trace)
            trace->energy.push_back(
                hs_energy(u, v, base_u, base_v, ix, iy, it, width, height, alpha2));
    }
}

}  // namespace

void FlowParams::validate() const {
    if (pyramid_levels < 1)
        throw std::invalid_argument("pyramid_levels must be >= 1");
    if (iterations_per_level < 1)
        throw std::invalid_argument("iterations_per_level must be >= 1");
    if (!(downscale_factor > 0.0 && downscale_factor < 1.0))
        throw std::invalid_argument("downscale_factor must be in (0,1)");
    if (!(smoothness_alpha > 0.0))
        throw std::invalid_argument("smoothness_alpha must be positive");
}

FlowField estimate_flow(const Frame& a, const Frame& b, const FlowParams& params,
                        FlowDiagnostics* diagnostics) {
    params.validate();
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("estimate_flow: frame dimensions differ, " +
                                    std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                    " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()));

    const std::vector<Level> pyr_a = build_pyramid(to_luma255(a), a.width(), a.height(), params);
    const std::vector<Level> pyr_b = build_pyramid(to_luma255(b), b.width(), b.height(), params);
    const std::size_t levels = std::min(pyr_a.size(), pyr_b.size());

    std::vector<double> u, v;
    for (std::size_t l = levels; l-- > 0;) {
        const Level& la = pyr_a[l];
        const Level& lb = pyr_b[l];
        const std::size_t n = static_cast<std::size_t>(la.width) * la.height;
        if (u.empty()) {
            u.assign(n, 0.0);
            v.assign(n, 0.0);
        } else {
            const Level& pa = pyr_a[l + 1];
            std::vector<float> uf(u.begin(), u.end()), vf(v.begin(), v.end());
            uf = resize_bilinear_plane(uf, pa.width, pa.height, la.width, la.height);
            vf = resize_bilinear_plane(vf, pa.width, pa.height, la.width, la.height);
            const double rx = static_cast<double>(la.width) / pa.width;
            const double ry = static_cast<double>(la.height) / pa.height;
            u.assign(n, 0.0);
            v.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = uf[i] * rx;
                v[i] = vf[i] * ry;
            }
        }
        FlowLevelTrace* trace = nullptr;
        if (diagnostics) {
            diagnostics->levels.emplace_back();
            trace = &diagnostics->levels.back();
        }
        solve_level(la, lb, u, v, params, trace);
    }

    FlowField flow(a.width(), a.height());
    const std::size_t n = static_cast<std::size_t>(a.width()) * a.height();
    for (std::size_t i = 0; i < n; ++i) {
        flow.u(static_cast<int>(i % a.width()), static_cast<int>(i / a.width())) =
            static_cast<float>(u[i]);
        flow.v(static_cast<int>(i % a.width()), static_cast<int>(i / a.width())) =
            static_cast<float>(v[i]);
    }
    return flow;
}

std::pair<FlowField, FlowField> estimate_bidirectional(const Frame& f1, const Frame& f3,
                                                       const FlowParams& params) {
    return {estimate_flow(f1, f3, params), estimate_flow(f3, f1, params)};
}

}  // namespace vfi
