#include "vfi/warp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vfi {

namespace {

void require_flow_shape(const Frame& frame, const FlowField& flow, const char* what) {
    if (frame.width() != flow.width() || frame.height() != flow.height())
        throw std::invalid_argument(std::string(what) + ": frame " +
                                    std::to_string(frame.width()) + "x" +
                                    std::to_string(frame.height()) + " vs flow " +
                                    std::to_string(flow.width()) + "x" +
                                    std::to_string(flow.height()));
}

}  // namespace

WarpResult forward_warp(const Frame& src, const FlowField& flow_to_t,
                        double coverage_threshold) {
    require_flow_shape(src, flow_to_t, "forward_warp");
    if (!(coverage_threshold > 0.0 && coverage_threshold <= 1.0))
        throw std::invalid_argument("forward_warp: coverage_threshold must be in (0,1], got " +
                                    std::to_string(coverage_threshold));

    const int w = src.width();
    const int h = src.height();
    const int ch = src.channels();
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<double> value_acc(n * ch, 0.0);
    std::vector<double> weight_acc(n, 0.0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double tx = x + static_cast<double>(flow_to_t.u(x, y));
            const double ty = y + static_cast<double>(flow_to_t.v(x, y));
            const int x0 = static_cast<int>(std::floor(tx));
            const int y0 = static_cast<int>(std::floor(ty));
            const double fx = tx - x0;
            const double fy = ty - y0;
            const double corner_w[4] = {(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy),
                                        (1.0 - fx) * fy, fx * fy};
            const int corner_x[4] = {x0, x0 + 1, x0, x0 + 1};
            const int corner_y[4] = {y0, y0, y0 + 1, y0 + 1};
            for (int k = 0; k < 4; ++k) {
                if (corner_w[k] == 0.0) continue;
                const int cx = corner_x[k];
                const int cy = corner_y[k];
                if (cx < 0 || cx >= w || cy < 0 || cy >= h) continue;
                const std::size_t ti = static_cast<std::size_t>(cy) * w + cx;
                weight_acc[ti] += corner_w[k];
                for (int c = 0; c < ch; ++c)
                    value_acc[ti * ch + c] += corner_w[k] * src.at(x, y, c);
            }
        }
    }

    Frame out(w, h, ch, 0.0f);
    HoleMask holes(w, h);
    for (std::size_t i = 0; i < n; ++i) {
        if (weight_acc[i] >= coverage_threshold) {
            for (int c = 0; c < ch; ++c)
                out.data()[i * ch + c] = static_cast<float>(value_acc[i * ch + c] / weight_acc[i]);
        } else {
            holes.data()[i] = 1;
        }
    }
    return {std::move(out), std::move(holes)};
}

Frame backward_warp(const Frame& src, const FlowField& flow) {
    require_flow_shape(src, flow, "backward_warp");
    Frame out(src.width(), src.height(), src.channels());
    for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
            const auto px = sample_bilinear(src, x + static_cast<double>(flow.u(x, y)),
                                            y + static_cast<double>(flow.v(x, y)));
            for (int c = 0; c < src.channels(); ++c) out.at(x, y, c) = px[c];
        }
    }
    return out;
}

CandidatePair synthesize_candidates(const Frame& f1, const Frame& f3, const FlowField& f13,
                                    const FlowField& f31, double t,
                                    double coverage_threshold) {
    require_same_shape(f1, f3, "synthesize_candidates");
    require_flow_shape(f1, f13, "synthesize_candidates");
    require_flow_shape(f3, f31, "synthesize_candidates");
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("synthesize_candidates: t must be in (0,1), got " +
                                    std::to_string(t));

    WarpResult fwd = forward_warp(f1, scale_flow(f13, t), coverage_threshold);
    WarpResult bwd = forward_warp(f3, scale_flow(f31, 1.0 - t), coverage_threshold);
    return {std::move(fwd.frame), std::move(fwd.holes), std::move(bwd.frame),
            std::move(bwd.holes)};
}

}  // namespace vfi
