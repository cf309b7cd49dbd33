// vfi: flow-based frame interpolation lab.
// Subcommands: flow, warp, interpolate, fuse, saliency, eval, bench.
// Exit codes: 0 success, 1 internal error, 2 usage/input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "vfi/bench.hpp"
#include "vfi/error.hpp"
#include "vfi/flow_estimation.hpp"
#include "vfi/fusion.hpp"
#include "vfi/image_io.hpp"
#include "vfi/metrics.hpp"
#include "vfi/saliency.hpp"
#include "vfi/warp.hpp"

namespace fs = std::filesystem;

namespace {

void add_flow_flags(CLI::App* cmd, vfi::FlowParams& p) {
    cmd->add_option("--levels", p.pyramid_levels, "Pyramid levels")->capture_default_str();
    cmd->add_option("--alpha", p.smoothness_alpha, "Smoothness weight (0-255 luma scale)")
        ->capture_default_str();
    cmd->add_option("--iterations", p.iterations_per_level, "Solver sweeps per pyramid level")
        ->capture_default_str();
    cmd->add_option("--downscale", p.downscale_factor, "Pyramid downscale factor")
        ->capture_default_str();
}

std::string strip_flo_suffix(const std::string& path) {
    if (path.size() > 4 && path.ends_with(".flo")) return path.substr(0, path.size() - 4);
    return path;
}

std::string text_metric(const std::optional<double>& v, const char* fmt) {
    if (!v) return "null";
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, *v);
    return buf;
}

struct FlowArgs {
    std::string a, b, out;
    bool bidirectional = false;
    vfi::FlowParams params;
};

struct WarpArgs {
    std::string src, flow, out, holes;
    double threshold = 0.25;
    double scale = 1.0;
    bool backward = false;
};

struct InterpolateArgs {
    std::string f1, f3, out;
    double t = 0.5;
    std::string flow_fwd, flow_bwd;
    bool dump_candidates = false;
    double threshold = 0.25;
    vfi::FlowParams params;
};

struct FuseArgs {
    std::string in1, in2, out;
    std::string mask_path, oracle_gt, save_mask;
    double constant_w = -1.0;
};

struct SaliencyArgs {
    std::string input, out;
    bool binarize = false;
};

struct EvalArgs {
    std::string pred, gt, saliency;
    bool no_saliency = false;
    bool binarize_saliency = false;
    bool json = false;
};

int run_flow(const FlowArgs& a) {
    const vfi::Frame f1 = vfi::load_frame(a.a);
    const vfi::Frame f3 = vfi::load_frame(a.b);
    if (a.bidirectional) {
        auto [fwd, bwd] = vfi::estimate_bidirectional(f1, f3, a.params);
        const std::string base = strip_flo_suffix(a.out);
        vfi::save_flo(fwd, base + ".fwd.flo");
        vfi::save_flo(bwd, base + ".bwd.flo");
        std::cout << "wrote " << base << ".fwd.flo and " << base << ".bwd.flo\n";
    } else {
        vfi::save_flo(vfi::estimate_flow(f1, f3, a.params), a.out);
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

int run_warp(const WarpArgs& a) {
    const vfi::Frame src = vfi::load_frame(a.src);
    vfi::FlowField flow = vfi::load_flo(a.flow);
    if (a.scale != 1.0) flow = vfi::scale_flow(flow, a.scale);
    if (a.backward) {
        vfi::save_frame(vfi::backward_warp(src, flow), a.out);
    } else {
        vfi::WarpResult r = vfi::forward_warp(src, flow, a.threshold);
        vfi::save_frame(r.frame, a.out);
        if (!a.holes.empty()) vfi::save_hole_mask(r.holes, a.holes);
    }
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

int run_interpolate(const InterpolateArgs& a) {
    const vfi::Frame f1 = vfi::load_frame(a.f1);
    const vfi::Frame f3 = vfi::load_frame(a.f3);
    if (a.flow_fwd.empty() != a.flow_bwd.empty())
        throw std::invalid_argument("--flow-fwd and --flow-bwd must be given together");

    std::optional<vfi::FlowField> fwd, bwd;
    if (!a.flow_fwd.empty()) {
        fwd = vfi::load_flo(a.flow_fwd);
        bwd = vfi::load_flo(a.flow_bwd);
    }
    const vfi::InterpolationResult r =
        vfi::interpolate_detailed(f1, f3, a.t, a.params, fwd ? &*fwd : nullptr,
                                  bwd ? &*bwd : nullptr, a.threshold);
    vfi::save_frame(r.output, a.out);
    std::cout << "wrote " << a.out << "\n";

    if (a.dump_candidates) {
        fs::path p(a.out);
        const std::string stem = (p.parent_path() / p.stem()).string();
        vfi::save_frame(r.candidates.i1t, stem + ".i1t.png");
        vfi::save_frame(r.candidates.i3t, stem + ".i3t.png");
        vfi::save_hole_mask(r.candidates.h1t, stem + ".h1t.png");
        vfi::save_hole_mask(r.candidates.h3t, stem + ".h3t.png");
        vfi::save_mask(r.weights, stem + ".weights.png");
        vfi::save_hole_mask(r.joint_holes, stem + ".joint.png");
        std::cout << "wrote candidate dumps " << stem
                  << ".{i1t,i3t,h1t,h3t,weights,joint}.png\n";
    }
    return 0;
}

int run_fuse(const FuseArgs& a) {
    const vfi::Frame in1 = vfi::load_frame(a.in1);
    const vfi::Frame in2 = vfi::load_frame(a.in2);
    const int given = (!a.mask_path.empty()) + (!a.oracle_gt.empty()) + (a.constant_w >= 0.0);
    if (given != 1) throw std::invalid_argument("give exactly one of --mask, --oracle, --w");

    vfi::MaskMap w(in1.width(), in1.height(), 0.5f);
    if (!a.mask_path.empty()) {
        w = vfi::load_saliency(a.mask_path, in1.width(), in1.height());
    } else if (!a.oracle_gt.empty()) {
        w = vfi::oracle_mask(in1, in2, vfi::load_frame(a.oracle_gt));
    } else {
        w = vfi::MaskMap(in1.width(), in1.height(), static_cast<float>(a.constant_w));
    }
    vfi::save_frame(vfi::attention_fuse(in1, in2, w), a.out);
    if (!a.save_mask.empty()) vfi::save_mask(w, a.save_mask);
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

int run_saliency(const SaliencyArgs& a) {
    vfi::MaskMap m = vfi::spectral_saliency(vfi::load_frame(a.input));
    if (a.binarize) m = vfi::binarize(m);
    vfi::save_mask(m, a.out);
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

int run_eval(const EvalArgs& a) {
    const vfi::Frame pred = vfi::load_frame(a.pred);
    const vfi::Frame gt = vfi::load_frame(a.gt);

    vfi::EvalRecord r;
    if (a.no_saliency) {
        const vfi::MaskMap whole(gt.width(), gt.height(), 1.0f);
        r.ie = vfi::masked_ie(pred, gt, whole);
        r.psnr = vfi::masked_psnr(pred, gt, whole);
        r.ssim = vfi::ssim(pred, gt);
    } else {
        vfi::MaskMap m = a.saliency.empty()
                             ? vfi::spectral_saliency(gt)
                             : vfi::load_saliency(a.saliency, gt.width(), gt.height());
        if (a.binarize_saliency) m = vfi::binarize(m);
        r = vfi::evaluate_sample(pred, gt, m);
    }

    if (a.json) {
        if (a.no_saliency) {
            std::cout << "{\"PSNR\":"
                      << (r.psnr && std::isinf(*r.psnr) ? "\"inf\"" : text_metric(r.psnr, "%.6f"))
                      << ",\"IE\":" << text_metric(r.ie, "%.6f")
                      << ",\"SSIM\":" << text_metric(r.ssim, "%.6f") << "}\n";
        } else {
            std::cout << vfi::eval_json(r) << "\n";
        }
        return 0;
    }
    std::cout << "PSNR: " << text_metric(r.psnr, "%.2f") << "\n";
    if (!a.no_saliency) {
        std::cout << "F-PSNR: " << text_metric(r.f_psnr, "%.2f") << "\n";
        std::cout << "B-PSNR: " << text_metric(r.b_psnr, "%.2f") << "\n";
    }
    std::cout << "IE: " << text_metric(r.ie, "%.2f") << "\n";
    if (!a.no_saliency) {
        std::cout << "F-IE: " << text_metric(r.f_ie, "%.2f") << "\n";
        std::cout << "B-IE: " << text_metric(r.b_ie, "%.2f") << "\n";
    }
    std::cout << "SSIM: " << text_metric(r.ssim, "%.4f") << "\n";
    return 0;
}

int run_bench_cmd(const vfi::BenchOptions& options) {
    const vfi::BenchSummary s = vfi::run_bench(options);
    std::cout << "evaluated " << s.evaluated << "/" << s.total << " samples";
    if (s.failed) std::cout << " (" << s.failed << " failed)";
    std::cout << "\n";
    std::cout << "mean: " << vfi::eval_csv_row(s.mean) << "\n";
    std::cout << "report: " << s.csv_path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flow-based video frame interpolation lab"};
    app.require_subcommand(1);

    FlowArgs flow_args;
    auto* flow_cmd = app.add_subcommand("flow", "Estimate optical flow between two frames");
    flow_cmd->add_option("a", flow_args.a, "First frame")->required();
    flow_cmd->add_option("b", flow_args.b, "Second frame")->required();
    flow_cmd->add_option("-o,--out", flow_args.out, "Output .flo path")->required();
    flow_cmd->add_flag("--bidirectional", flow_args.bidirectional,
                       "Write both directions as <out>.fwd.flo / <out>.bwd.flo");
    add_flow_flags(flow_cmd, flow_args.params);
    flow_cmd->set_config("--config");

    WarpArgs warp_args;
    auto* warp_cmd = app.add_subcommand("warp", "Warp a frame along a flow field");
    warp_cmd->add_option("src", warp_args.src, "Source frame")->required();
    warp_cmd->add_option("flow", warp_args.flow, "Flow field (.flo)")->required();
    warp_cmd->add_option("-o,--out", warp_args.out, "Output image")->required();
    warp_cmd->add_option("--holes", warp_args.holes, "Write the hole mask PNG (255 = hole)");
    warp_cmd->add_option("--threshold", warp_args.threshold, "Splat coverage threshold")
        ->capture_default_str();
    warp_cmd->add_option("--scale", warp_args.scale, "Scale flow by t in [0,1] before warping")
        ->capture_default_str();
    warp_cmd->add_flag("--backward", warp_args.backward, "Backward (gather) warp instead");

    InterpolateArgs interp_args;
    auto* interp_cmd = app.add_subcommand("interpolate", "Synthesize the frame at time t");
    interp_cmd->add_option("f1", interp_args.f1, "First frame")->required();
    interp_cmd->add_option("f3", interp_args.f3, "Last frame")->required();
    interp_cmd->add_option("-o,--out", interp_args.out, "Output image")->required();
    interp_cmd->add_option("--t", interp_args.t, "Interpolation time in (0,1)")
        ->capture_default_str();
    interp_cmd->add_option("--flow-fwd", interp_args.flow_fwd, "Precomputed forward flow (.flo)");
    interp_cmd->add_option("--flow-bwd", interp_args.flow_bwd, "Precomputed backward flow (.flo)");
    interp_cmd->add_flag("--dump-candidates", interp_args.dump_candidates,
                         "Also write candidates, hole masks, weights, joint holes");
    interp_cmd->add_option("--threshold", interp_args.threshold, "Splat coverage threshold")
        ->capture_default_str();
    add_flow_flags(interp_cmd, interp_args.params);
    interp_cmd->set_config("--config");

    FuseArgs fuse_args;
    auto* fuse_cmd = app.add_subcommand("fuse", "Blend two frames with an attention mask");
    fuse_cmd->add_option("in1", fuse_args.in1, "First input")->required();
    fuse_cmd->add_option("in2", fuse_args.in2, "Second input")->required();
    fuse_cmd->add_option("-o,--out", fuse_args.out, "Output image")->required();
    fuse_cmd->add_option("--mask", fuse_args.mask_path, "Weight mask image (weight = byte/255)");
    fuse_cmd->add_option("--w", fuse_args.constant_w, "Constant weight in [0,1]");
    fuse_cmd->add_option("--oracle", fuse_args.oracle_gt,
                         "Ground truth for the least-squares oracle mask");
    fuse_cmd->add_option("--save-mask", fuse_args.save_mask, "Write the mask actually used");

    SaliencyArgs sal_args;
    auto* sal_cmd = app.add_subcommand("saliency", "Spectral-residual saliency map");
    sal_cmd->add_option("input", sal_args.input, "Input image")->required();
    sal_cmd->add_option("-o,--out", sal_args.out, "Output grayscale PNG")->required();
    sal_cmd->add_flag("--binarize", sal_args.binarize, "Threshold the map at 0.5");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a frame against ground truth");
    eval_cmd->add_option("pred", eval_args.pred, "Predicted frame")->required();
    eval_cmd->add_option("gt", eval_args.gt, "Ground-truth frame")->required();
    eval_cmd->add_option("--saliency", eval_args.saliency,
                         "Foreground mask image (default: spectral saliency of gt)");
    eval_cmd->add_flag("--no-saliency", eval_args.no_saliency, "Whole-frame metrics only");
    eval_cmd->add_flag("--binarize-saliency", eval_args.binarize_saliency,
                       "Threshold the mask at 0.5");
    eval_cmd->add_flag("--json", eval_args.json, "Emit one JSON object");

    vfi::BenchOptions bench_options;
    std::string bench_layout = "flat";
    std::string bench_report = "csv";
    long long bench_limit = -1;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark a triplet dataset");
    bench_cmd->add_option("root", bench_options.root, "Dataset root directory")->required();
    bench_cmd->add_option("--layout", bench_layout, "Dataset layout: vimeo|middlebury|flat")
        ->check(CLI::IsMember({"vimeo", "middlebury", "flat"}))
        ->capture_default_str();
    bench_cmd->add_option("-o,--out", bench_options.out_dir, "Report output directory")
        ->capture_default_str();
    bench_cmd->add_option("--limit", bench_limit, "Evaluate a random subset of this size");
    bench_cmd->add_option("--seed", bench_options.seed, "Subset sampling seed")
        ->capture_default_str();
    bench_cmd->add_option("--list-file", bench_options.list_file,
                          "Vimeo-style clip list (tri_testlist.txt)");
    bench_cmd->add_option("--saliency-dir", bench_options.saliency_dir,
                          "Directory of precomputed per-sample saliency maps (<id>.png)");
    bench_cmd->add_option("--t", bench_options.t, "Interpolation time")->capture_default_str();
    bench_cmd->add_option("--threshold", bench_options.coverage_threshold,
                          "Splat coverage threshold")
        ->capture_default_str();
    bench_cmd->add_flag("--binarize-saliency", bench_options.binarize_saliency,
                        "Threshold saliency masks at 0.5");
    bench_cmd->add_option("--report", bench_report, "Report format: csv|md (csv always written)")
        ->check(CLI::IsMember({"csv", "md"}))
        ->capture_default_str();
    bench_cmd->add_option("--threads", bench_options.threads, "Worker threads")
        ->capture_default_str();
    add_flow_flags(bench_cmd, bench_options.flow);
    bench_cmd->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (flow_cmd->parsed()) return run_flow(flow_args);
        if (warp_cmd->parsed()) return run_warp(warp_args);
        if (interp_cmd->parsed()) return run_interpolate(interp_args);
        if (fuse_cmd->parsed()) return run_fuse(fuse_args);
        if (sal_cmd->parsed()) return run_saliency(sal_args);
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (bench_cmd->parsed()) {
            if (bench_limit >= 0) bench_options.limit = static_cast<std::size_t>(bench_limit);
            bench_options.layout = vfi::parse_layout(bench_layout);
            bench_options.markdown_report = bench_report == "md";
            return run_bench_cmd(bench_options);
        }
    } catch (const vfi::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
