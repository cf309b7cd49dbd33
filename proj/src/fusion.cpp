#include "vfi/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vfi/imgproc.hpp"

namespace vfi {

namespace {

void require_mask_shape(const Frame& frame, int mw, int mh, const char* what) {
    if (frame.width() != mw || frame.height() != mh)
        throw std::invalid_argument(std::string(what) + ": frame " +
                                    std::to_string(frame.width()) + "x" +
                                    std::to_string(frame.height()) + " vs mask " +
                                    std::to_string(mw) + "x" + std::to_string(mh));
}

}  // namespace

Frame attention_fuse(const Frame& in1, const Frame& in2, const MaskMap& w) {
    require_same_shape(in1, in2, "attention_fuse");
    require_mask_shape(in1, w.width(), w.height(), "attention_fuse");
    if (!w.in_range())
        throw std::invalid_argument("attention_fuse: mask weight outside [0,1]");

    Frame out(in1.width(), in1.height(), in1.channels());
    const int ch = in1.channels();
    const std::size_t n = w.pixel_count();
    // Double evaluation keeps the blend inside [min,max] after the float cast.
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.data()[i];
        for (int c = 0; c < ch; ++c)
            out.data()[i * ch + c] = static_cast<float>(
                wi * in1.data()[i * ch + c] + (1.0 - wi) * in2.data()[i * ch + c]);
    }
    return out;
}

MaskMap contribution_mask(const Frame& i1t, const Frame& i3t, const FlowField& f13,
                          const FlowField& f31, const HoleMask& h1t, const HoleMask& h3t,
                          double t) {
    require_same_shape(i1t, i3t, "contribution_mask");
    const int w = i1t.width();
    const int h = i1t.height();
    if (f13.width() != w || f13.height() != h || f31.width() != w || f31.height() != h)
        throw std::invalid_argument("contribution_mask: flow dimensions mismatch");
    if (h1t.width() != w || h1t.height() != h || h3t.width() != w || h3t.height() != h)
        throw std::invalid_argument("contribution_mask: hole mask dimensions mismatch");

    const std::size_t n = static_cast<std::size_t>(w) * h;
    const float base = static_cast<float>(1.0 - t);
    std::vector<float> weights(n, base);
    // -1 = no override; exclusive holes pin the weight to the surviving source.
    std::vector<signed char> hard(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const bool hole1 = h1t.data()[i] != 0;
        const bool hole3 = h3t.data()[i] != 0;
        if (hole1 && !hole3) {
            weights[i] = 0.0f;
            hard[i] = 0;
        } else if (hole3 && !hole1) {
            weights[i] = 1.0f;
            hard[i] = 1;
        }
    }

    weights = box_mean_plane(weights, w, h, 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (hard[i] >= 0)
            weights[i] = static_cast<float>(hard[i]);
        else
            weights[i] = std::clamp(weights[i], 0.0f, 1.0f);
    }
    return MaskMap(w, h, std::move(weights));
}

Frame fill_joint_holes(const Frame& frame, const HoleMask& joint) {
    require_mask_shape(frame, joint.width(), joint.height(), "fill_joint_holes");
    if (!joint.any()) return frame;
    const std::size_t n = static_cast<std::size_t>(frame.width()) * frame.height();
    if (joint.count() == n)
        throw std::invalid_argument("fill_joint_holes: every pixel is a hole");

    const int w = frame.width();
    const int h = frame.height();
    const int ch = frame.channels();
    Frame out = frame;
    std::vector<std::uint8_t> hole = joint.data();

    for (int sweep = 0; sweep < 100; ++sweep) {
        bool holes_left = false;
        Frame next = out;
        std::vector<std::uint8_t> next_hole = hole;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                if (!hole[i]) continue;
                double acc[3] = {0.0, 0.0, 0.0};
                int cnt = 0;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
                        if (hole[j]) continue;
                        for (int c = 0; c < ch; ++c) acc[c] += out.data()[j * ch + c];
                        ++cnt;
                    }
                }
                if (cnt > 0) {
                    for (int c = 0; c < ch; ++c)
                        next.data()[i * ch + c] = static_cast<float>(acc[c] / cnt);
                    next_hole[i] = 0;
                } else {
                    holes_left = true;
                }
            }
        }
        out = std::move(next);
        hole = std::move(next_hole);
        if (!holes_left) break;
    }
    return out;
}

MaskMap oracle_mask(const Frame& in1, const Frame& in2, const Frame& gt) {
    require_same_shape(in1, in2, "oracle_mask");
    require_same_shape(in1, gt, "oracle_mask");
    const int ch = in1.channels();
    const std::size_t n = static_cast<std::size_t>(in1.width()) * in1.height();
    std::vector<float> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        double num = 0.0, den = 0.0;
        for (int c = 0; c < ch; ++c) {
            const double d = static_cast<double>(in1.data()[i * ch + c]) - in2.data()[i * ch + c];
            const double g = static_cast<double>(gt.data()[i * ch + c]) - in2.data()[i * ch + c];
            num += g * d;
            den += d * d;
        }
        weights[i] = den == 0.0 ? 0.5f : static_cast<float>(std::clamp(num / den, 0.0, 1.0));
    }
    return MaskMap(in1.width(), in1.height(), std::move(weights));
}

InterpolationResult interpolate_detailed(const Frame& f1, const Frame& f3, double t,
                                         const FlowParams& params, const FlowField* f13,
                                         const FlowField* f31, double coverage_threshold) {
    require_same_shape(f1, f3, "interpolate");
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("interpolate: t must be in (0,1), got " + std::to_string(t));
    if ((f13 == nullptr) != (f31 == nullptr))
        throw std::invalid_argument("interpolate: supply both precomputed flows or neither");

    InterpolationResult r;
    if (f13) {
        r.f13 = *f13;
        r.f31 = *f31;
    } else {
        auto flows = estimate_bidirectional(f1, f3, params);
        r.f13 = std::move(flows.first);
        r.f31 = std::move(flows.second);
    }

    r.candidates = synthesize_candidates(f1, f3, r.f13, r.f31, t, coverage_threshold);
    r.weights = contribution_mask(r.candidates.i1t, r.candidates.i3t, r.f13, r.f31,
                                  r.candidates.h1t, r.candidates.h3t, t);
    Frame fused = attention_fuse(r.candidates.i1t, r.candidates.i3t, r.weights);

    r.joint_holes = HoleMask(f1.width(), f1.height());
    for (std::size_t i = 0; i < r.joint_holes.data().size(); ++i)
        r.joint_holes.data()[i] =
            (r.candidates.h1t.data()[i] && r.candidates.h3t.data()[i]) ? 1 : 0;

    r.output = r.joint_holes.any() ? fill_joint_holes(fused, r.joint_holes) : std::move(fused);
    return r;
}

Frame interpolate(const Frame& f1, const Frame& f3, double t, const FlowParams& params,
                  const FlowField* f13, const FlowField* f31, double coverage_threshold) {
    return interpolate_detailed(f1, f3, t, params, f13, f31, coverage_threshold).output;
}

}  // namespace vfi
