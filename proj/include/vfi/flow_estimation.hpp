#pragma once

#include <utility>
#include <vector>

#include "vfi/flow.hpp"
#include "vfi/image.hpp"

namespace vfi {

/// Coarse-to-fine Horn-Schunck settings. smoothness_alpha is expressed on the
/// 0-255 luma scale the solver works in.
struct FlowParams {
    int pyramid_levels = 4;
    double smoothness_alpha = 15.0;
    int iterations_per_level = 100;
    double downscale_factor = 0.5;

    void validate() const;
};

/// Per-level solver trace: energy[0] is the energy at the warped-initialization
/// point, energy[k] the energy after sweep k. The discrete energy is
///   sum_p (Ix*du + Iy*dv + It)^2 + alpha^2 * sum_edges |grad u|^2 + |grad v|^2
/// and is non-increasing across sweeps.
struct FlowLevelTrace {
    int width = 0;
    int height = 0;
    std::vector<double> energy;
};

struct FlowDiagnostics {
    std::vector<FlowLevelTrace> levels;  // ordered coarsest to finest
};

/// Dense optical flow from a to b via pyramidal Horn-Schunck: at each level the
/// target is warped toward the source by the upsampled coarser flow, brightness
/// constancy is linearized there, and Jacobi sweeps (exact per-pixel 2x2 block
/// solves) minimize the data + alpha^2 * smoothness energy.
FlowField estimate_flow(const Frame& a, const Frame& b, const FlowParams& params = {},
                        FlowDiagnostics* diagnostics = nullptr);

/// (F_1->3, F_3->1) = (estimate_flow(f1,f3), estimate_flow(f3,f1)).
std::pair<FlowField, FlowField> estimate_bidirectional(const Frame& f1, const Frame& f3,
                                                       const FlowParams& params = {});

}  // namespace vfi
