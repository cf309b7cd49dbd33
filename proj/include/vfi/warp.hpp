#pragma once

#include "vfi/flow.hpp"
#include "vfi/image.hpp"

namespace vfi {

struct WarpResult {
    Frame frame;
    HoleMask holes;
};

/// Forward-warp (splat) src along flow_to_t. Every source pixel distributes its
/// value to the four integer neighbors of its target position with bilinear
/// weights; per-pixel sums of weight*value and weight are kept, and a target
/// pixel becomes value-sum/weight-sum where the weight-sum reaches
/// coverage_threshold, and a hole (value 0) below it. Splat corners outside the
/// image are discarded.
WarpResult forward_warp(const Frame& src, const FlowField& flow_to_t,
                        double coverage_threshold = 0.25);

/// output(p) = sample_bilinear(src, p + flow(p)).
Frame backward_warp(const Frame& src, const FlowField& flow);

struct CandidatePair {
    Frame i1t;
    HoleMask h1t;
    Frame i3t;
    HoleMask h3t;
};

/// Linear-motion interpolation candidates at time t in (0,1):
/// I_1->t = forward_warp(f1, t * F_1->3), I_3->t = forward_warp(f3, (1-t) * F_3->1).
CandidatePair synthesize_candidates(const Frame& f1, const Frame& f3, const FlowField& f13,
                                    const FlowField& f31, double t,
                                    double coverage_threshold = 0.25);

}  // namespace vfi
