#pragma once

#include "vfi/flow.hpp"
#include "vfi/flow_estimation.hpp"
#include "vfi/image.hpp"
#include "vfi/warp.hpp"

namespace vfi {

/// Pointwise attention blend: out = W * in1 + (1 - W) * in2, per channel.
/// Requires matching shapes and W within [0,1]. Works for any two candidate
/// frames, so both fusion sites (candidate blending and branch blending) use it.
Frame attention_fuse(const Frame& in1, const Frame& in2, const MaskMap& w);

/// Rule-based source contribution weight toward I_1->t: base weight 1-t,
/// forced to 0 where only H_1->t is a hole and to 1 where only H_3->t is,
/// then softened by a 5x5 box filter with the hard overrides re-applied.
/// Joint holes keep the base weight; they are filled after fusion.
/// The flow maps are part of the contract (they are inputs of the mask stage)
/// and are shape-checked, but the deterministic rule only consumes the holes.
MaskMap contribution_mask(const Frame& i1t, const Frame& i3t, const FlowField& f13,
                          const FlowField& f31, const HoleMask& h1t, const HoleMask& h3t,
                          double t);

/// Replace joint-hole pixels by the mean of their non-hole 8-neighbors,
/// sweeping until no hole remains (at most 100 sweeps). An all-hole frame is an
/// error.
Frame fill_joint_holes(const Frame& frame, const HoleMask& joint);

/// Per-pixel least-squares optimal blend weight against a ground truth:
/// W* = clamp(sum_c (gt-in2)(in1-in2) / sum_c (in1-in2)^2, 0, 1), 0.5 on ties.
/// Bounds what any learned mask could achieve.
MaskMap oracle_mask(const Frame& in1, const Frame& in2, const Frame& gt);

struct InterpolationResult {
    Frame output;
    CandidatePair candidates;
    MaskMap weights;
    HoleMask joint_holes;
    FlowField f13;
    FlowField f31;
};

/// Full pipeline: bidirectional flow (estimated unless both are supplied),
/// linear scaling to t, forward-warped candidates with hole masks, contribution
/// mask, attention fusion, joint-hole filling.
InterpolationResult interpolate_detailed(const Frame& f1, const Frame& f3, double t,
                                         const FlowParams& params = {},
                                         const FlowField* f13 = nullptr,
                                         const FlowField* f31 = nullptr,
                                         double coverage_threshold = 0.25);

Frame interpolate(const Frame& f1, const Frame& f3, double t, const FlowParams& params = {},
                  const FlowField* f13 = nullptr, const FlowField* f31 = nullptr,
                  double coverage_threshold = 0.25);

}  // namespace vfi
