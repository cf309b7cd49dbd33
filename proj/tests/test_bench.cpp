#include <doctest.h>

#include <fstream>
#include <sstream>

#include "testutil.hpp"
#include "vfi/bench.hpp"
#include "vfi/image_io.hpp"

using vfi::BenchOptions;
using vfi::BenchSummary;

namespace {

// Ten small translation triples with varying shifts and textures.
void make_flat_fixture(const std::filesystem::path& root, int count = 10) {
    for (int i = 0; i < count; ++i) {
        const vfi::Frame base = testutil::smooth_periodic_texture(40, 32, 1000 + i);
        const int dx = (i % 3) - 1;
        const vfi::Frame f1 = testutil::circular_shift(base, -dx, 0);
        const vfi::Frame f3 = testutil::circular_shift(base, +dx, 0);
        char name[16];
        std::snprintf(name, sizeof(name), "clip%02d", i);
        const auto dir = root / name;
        std::filesystem::create_directories(dir);
        vfi::save_frame(f1, (dir / "im1.png").string());
        vfi::save_frame(base, (dir / "im2.png").string());
        vfi::save_frame(f3, (dir / "im3.png").string());
    }
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BenchOptions fast_options(const std::filesystem::path& root,
                          const std::filesystem::path& out) {
    BenchOptions o;
    o.root = root;
    o.out_dir = out;
    o.layout = vfi::DatasetLayout::flat_triplet;
    o.flow.iterations_per_level = 20;  // keep the fixture run quick
    return o;
}

}  // namespace

TEST_CASE("bench writes a deterministic report with aggregates") {
    testutil::TempDir dir("bench");
    const auto root = dir.path() / "data";
    make_flat_fixture(root);

    BenchOptions o = fast_options(root, dir.path() / "out1");
    o.limit = 5;
    o.seed = 7;
    const BenchSummary s1 = vfi::run_bench(o);
    CHECK(s1.total == 5);
    CHECK(s1.evaluated == 5);
    CHECK(s1.failed == 0);

    o.out_dir = dir.path() / "out2";
    const BenchSummary s2 = vfi::run_bench(o);
    CHECK(slurp(dir.path() / "out1" / "report.csv") == slurp(dir.path() / "out2" / "report.csv"));
    CHECK(std::filesystem::exists(dir.path() / "out1" / "manifest.json"));
    CHECK(std::filesystem::exists(dir.path() / "out1" / "config.txt"));

    // Aggregate row is the arithmetic mean of the per-sample column.
    double ie_sum = 0.0;
    for (const auto& r : s1.records) ie_sum += *r.ie;
    CHECK(*s1.mean.ie == doctest::Approx(ie_sum / 5.0).epsilon(1e-9));

    // CSV shape: header + 5 samples + mean + inf_count + failed.
    std::istringstream csv(slurp(dir.path() / "out1" / "report.csv"));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == vfi::eval_csv_header());
    CHECK(lines[6].substr(0, 5) == "mean,");
    CHECK(lines[7].substr(0, 10) == "inf_count,");
    CHECK(lines[8].substr(0, 7) == "failed,");
}

TEST_CASE("bench is thread-count invariant") {
    testutil::TempDir dir("benchmt");
    const auto root = dir.path() / "data";
    make_flat_fixture(root, 6);

    BenchOptions o = fast_options(root, dir.path() / "serial");
    o.threads = 1;
    vfi::run_bench(o);
    o.out_dir = dir.path() / "parallel";
    o.threads = 4;
    vfi::run_bench(o);
    CHECK(slurp(dir.path() / "serial" / "report.csv") ==
          slurp(dir.path() / "parallel" / "report.csv"));
}

TEST_CASE("per-sample failures are skipped and counted") {
    testutil::TempDir dir("benchfail");
    const auto root = dir.path() / "data";
    make_flat_fixture(root, 3);
    // Break one triplet with a mismatched frame size.
    vfi::save_frame(vfi::Frame(8, 8, 1, 0.5f), (root / "clip01" / "im3.png").string());

    const BenchSummary s = vfi::run_bench(fast_options(root, dir.path() / "out"));
    CHECK(s.total == 3);
    CHECK(s.evaluated == 2);
    CHECK(s.failed == 1);
    REQUIRE(s.failures.size() == 1);
    CHECK(s.failures[0].substr(0, 6) == "clip01");

    const std::string csv = slurp(dir.path() / "out" / "report.csv");
    CHECK(csv.find("failed,1,") != std::string::npos);
}

TEST_CASE("bench markdown report and saliency dir") {
    testutil::TempDir dir("benchmd");
    const auto root = dir.path() / "data";
    make_flat_fixture(root, 2);

    // Precomputed saliency maps, one per sample id.
    const auto sal_dir = dir.path() / "sal";
    std::filesystem::create_directories(sal_dir);
    vfi::MaskMap left(40, 32, 0.0f);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 20; ++x) left.at(x, y) = 1.0f;
    vfi::save_mask(left, (sal_dir / "clip00.png").string());
    vfi::save_mask(left, (sal_dir / "clip01.png").string());

    BenchOptions o = fast_options(root, dir.path() / "out");
    o.saliency_dir = sal_dir;
    o.markdown_report = true;
    const BenchSummary s = vfi::run_bench(o);
    CHECK(s.evaluated == 2);
    for (const auto& r : s.records) {
        CHECK(r.f_ie.has_value());
        CHECK(r.b_ie.has_value());
    }
    const std::string md = slurp(dir.path() / "out" / "report.md");
    CHECK(md.find("| sample | PSNR | F-PSNR | B-PSNR | IE | F-IE | B-IE | SSIM |") !=
          std::string::npos);
    CHECK(md.find("**mean**") != std::string::npos);
}
