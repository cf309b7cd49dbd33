#include "vfi/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "vfi/error.hpp"
#include "vfi/fusion.hpp"
#include "vfi/image_io.hpp"
#include "vfi/saliency.hpp"

namespace fs = std::filesystem;

namespace vfi {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string md_metric(const std::optional<double>& v, const char* fmt) {
    if (!v) return "null";
    if (std::isinf(*v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, *v);
    return buf;
}

EvalRecord evaluate_one(const TripletSample& sample, const BenchOptions& options) {
    const Frame f1 = load_frame(sample.first.string());
    const Frame gt = load_frame(sample.middle.string());
    const Frame f3 = load_frame(sample.last.string());
    if (!f1.same_shape(gt) || !f1.same_shape(f3))
        throw std::invalid_argument("triplet frames have mismatched dimensions");

    const Frame out = interpolate(f1, f3, options.t, options.flow, nullptr, nullptr,
                                  options.coverage_threshold);

    MaskMap saliency_f = options.saliency_dir.empty()
                             ? spectral_saliency(gt)
                             : load_saliency((options.saliency_dir / (sample.id + ".png")).string(),
                                             gt.width(), gt.height());
    if (options.binarize_saliency) saliency_f = binarize(saliency_f);
    return evaluate_sample(out, gt, saliency_f, sample.id);
}

struct MeanAccum {
    double sum = 0.0;
    std::size_t n = 0;
    std::size_t inf = 0;

    void add(const std::optional<double>& v) {
        if (!v) return;
        if (std::isinf(*v)) {
            ++inf;
            return;
        }
        sum += *v;
        ++n;
    }
    std::optional<double> mean() const {
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    }
};

void write_markdown(const BenchOptions& options, const BenchSummary& summary,
                    const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report: " + path.string());
    out << "# Interpolation benchmark\n\n";
    out << "- dataset: " << options.root.generic_string() << " (layout "
        << layout_name(options.layout) << ")\n";
    out << "- samples: " << summary.evaluated << " evaluated, " << summary.failed
        << " failed\n";
    out << "- seed: " << options.seed << ", limit: "
        << (options.limit ? std::to_string(*options.limit) : std::string("none")) << "\n";
    out << "- t: " << num(options.t) << "\n";
    out << "- saliency: "
        << (options.saliency_dir.empty() ? std::string("spectral-residual")
                                         : options.saliency_dir.generic_string())
        << (options.binarize_saliency ? " (binarized)" : "") << "\n";
    out << "- flow: levels=" << options.flow.pyramid_levels
        << " alpha=" << num(options.flow.smoothness_alpha)
        << " iterations=" << options.flow.iterations_per_level
        << " downscale=" << num(options.flow.downscale_factor) << "\n\n";

    out << "| sample | PSNR | F-PSNR | B-PSNR | IE | F-IE | B-IE | SSIM |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    auto row = [&](const std::string& name, const EvalRecord& r) {
        out << "| " << name << " | " << md_metric(r.psnr, "%.2f") << " | "
            << md_metric(r.f_psnr, "%.2f") << " | " << md_metric(r.b_psnr, "%.2f") << " | "
            << md_metric(r.ie, "%.2f") << " | " << md_metric(r.f_ie, "%.2f") << " | "
            << md_metric(r.b_ie, "%.2f") << " | " << md_metric(r.ssim, "%.4f") << " |\n";
    };
    for (const EvalRecord& r : summary.records) row(r.sample_id, r);
    row("**mean**", summary.mean);

    out << "\ninfinite PSNR samples excluded from the means: PSNR " << summary.inf_psnr
        << ", F-PSNR " << summary.inf_f_psnr << ", B-PSNR " << summary.inf_b_psnr << "\n";
    if (!summary.failures.empty()) {
        out << "\nfailed samples:\n";
        for (const std::string& f : summary.failures) out << "- " << f << "\n";
    }
}

}  // namespace

std::string bench_config_text(const BenchOptions& options) {
    std::string s;
    s += "root=" + options.root.generic_string() + "\n";
    s += "layout=" + layout_name(options.layout) + "\n";
    s += "out=" + options.out_dir.generic_string() + "\n";
    s += "list-file=" + options.list_file.generic_string() + "\n";
    s += "saliency-dir=" + options.saliency_dir.generic_string() + "\n";
    s += "limit=" + (options.limit ? std::to_string(*options.limit) : std::string("none")) + "\n";
    s += "seed=" + std::to_string(options.seed) + "\n";
    s += "t=" + num(options.t) + "\n";
    s += "levels=" + std::to_string(options.flow.pyramid_levels) + "\n";
    s += "alpha=" + num(options.flow.smoothness_alpha) + "\n";
    s += "iterations=" + std::to_string(options.flow.iterations_per_level) + "\n";
    s += "downscale=" + num(options.flow.downscale_factor) + "\n";
    s += "threshold=" + num(options.coverage_threshold) + "\n";
    s += "binarize-saliency=" + std::string(options.binarize_saliency ? "true" : "false") + "\n";
    s += "markdown=" + std::string(options.markdown_report ? "true" : "false") + "\n";
    s += "threads=" + std::to_string(options.threads) + "\n";
    return s;
}

BenchSummary run_bench(const BenchOptions& options) {
    options.flow.validate();
    if (!(options.t > 0.0 && options.t < 1.0))
        throw std::invalid_argument("bench: t must be in (0,1)");

    DatasetManifest manifest = scan_dataset(options.root, options.layout, options.list_file);
    if (options.limit && *options.limit < manifest.samples.size())
        manifest = subsample(manifest, *options.limit, options.seed);

    const std::size_t n = manifest.samples.size();
    std::vector<std::optional<EvalRecord>> results(n);
    std::vector<std::string> errors(n);

    const int thread_count = std::max(1, std::min<int>(options.threads, static_cast<int>(n)));
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
            try {
                results[i] = evaluate_one(manifest.samples[i], options);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    BenchSummary summary;
    summary.total = n;
    MeanAccum psnr, f_psnr, b_psnr, ie, f_ie, b_ie, ssim_acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (results[i]) {
            summary.records.push_back(*results[i]);
            psnr.add(results[i]->psnr);
            f_psnr.add(results[i]->f_psnr);
            b_psnr.add(results[i]->b_psnr);
            ie.add(results[i]->ie);
            f_ie.add(results[i]->f_ie);
            b_ie.add(results[i]->b_ie);
            ssim_acc.add(results[i]->ssim);
        } else {
            summary.failures.push_back(manifest.samples[i].id + ": " + errors[i]);
            std::fprintf(stderr, "[bench] sample %s failed: %s\n",
                         manifest.samples[i].id.c_str(), errors[i].c_str());
        }
    }
    summary.evaluated = summary.records.size();
    summary.failed = summary.failures.size();
    summary.mean.sample_id = "mean";
    summary.mean.psnr = psnr.mean();
    summary.mean.f_psnr = f_psnr.mean();
    summary.mean.b_psnr = b_psnr.mean();
    summary.mean.ie = ie.mean();
    summary.mean.f_ie = f_ie.mean();
    summary.mean.b_ie = b_ie.mean();
    summary.mean.ssim = ssim_acc.mean();
    summary.inf_psnr = psnr.inf;
    summary.inf_f_psnr = f_psnr.inf;
    summary.inf_b_psnr = b_psnr.inf;

    fs::create_directories(options.out_dir);
    summary.csv_path = options.out_dir / "report.csv";
    {
        std::ofstream csv(summary.csv_path);
        if (!csv) throw IoError("cannot write report: " + summary.csv_path.string());
        csv << eval_csv_header() << "\n";
        for (const EvalRecord& r : summary.records) csv << eval_csv_row(r) << "\n";
        csv << eval_csv_row(summary.mean) << "\n";
        csv << "inf_count," << summary.inf_psnr << "," << summary.inf_f_psnr << ","
            << summary.inf_b_psnr << ",null,null,null,null\n";
        csv << "failed," << summary.failed << ",null,null,null,null,null,null\n";
    }
    save_manifest(manifest, options.out_dir / "manifest.json");
    {
        std::ofstream cfg(options.out_dir / "config.txt");
        if (!cfg) throw IoError("cannot write config record");
        cfg << bench_config_text(options);
    }
    if (options.markdown_report)
        write_markdown(options, summary, options.out_dir / "report.md");
    return summary;
}

}  // namespace vfi
