#include <doctest.h>

#include <fstream>

#include "testutil.hpp"
#include "vfi/dataset.hpp"
#include "vfi/error.hpp"

using vfi::DatasetLayout;
using vfi::DatasetManifest;

namespace {

void touch(const std::filesystem::path& p) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p).put('\n');
}

}  // namespace

TEST_CASE("vimeo layout scan") {
    testutil::TempDir dir("vimeo");
    const auto root = dir.path();
    for (const char* clip : {"0002", "0001"}) {
        for (const char* im : {"im1.png", "im2.png", "im3.png"})
            touch(root / "sequences" / "00001" / clip / im);
    }
    touch(root / "sequences" / "00002" / "0001" / "im1.png");  // incomplete clip: ignored

    const DatasetManifest m = vfi::scan_dataset(root, DatasetLayout::vimeo);
    REQUIRE(m.samples.size() == 2);
    CHECK(m.samples[0].id == "00001/0001");
    CHECK(m.samples[1].id == "00001/0002");
    CHECK(m.samples[0].middle.filename() == "im2.png");

    SUBCASE("list file filters clips") {
        const auto list = root / "list.txt";
        std::ofstream(list) << "00001/0002\r\n";
        const DatasetManifest filtered = vfi::scan_dataset(root, DatasetLayout::vimeo, list);
        REQUIRE(filtered.samples.size() == 1);
        CHECK(filtered.samples[0].id == "00001/0002");
    }
}

TEST_CASE("middlebury layout scan finds 12 scenes") {
    testutil::TempDir dir("mb");
    const auto root = dir.path();
    for (int i = 0; i < 12; ++i) {
        const auto scene = root / ("scene" + std::to_string(i));
        touch(scene / "frame10.png");
        touch(scene / "frame10i11.png");
        touch(scene / "frame11.png");
    }
    touch(root / "broken" / "frame10.png");  // missing ground truth: ignored

    const DatasetManifest m = vfi::scan_dataset(root, DatasetLayout::middlebury);
    CHECK(m.samples.size() == 12);
    CHECK(m.samples[0].middle.filename() == "frame10i11.png");
}

TEST_CASE("flat layout accepts im* and frame* stems at any depth") {
    testutil::TempDir dir("flat");
    const auto root = dir.path();
    touch(root / "a" / "im1.png");
    touch(root / "a" / "im2.png");
    touch(root / "a" / "im3.png");
    touch(root / "b" / "deep" / "frame1.ppm");
    touch(root / "b" / "deep" / "frame2.ppm");
    touch(root / "b" / "deep" / "frame3.ppm");

    const DatasetManifest m = vfi::scan_dataset(root, DatasetLayout::flat_triplet);
    REQUIRE(m.samples.size() == 2);
    CHECK(m.samples[0].id == "a");
    CHECK(m.samples[1].id == "b/deep");
}

TEST_CASE("empty scan is an explicit error") {
    testutil::TempDir dir("empty");
    CHECK_THROWS_AS(vfi::scan_dataset(dir.path(), DatasetLayout::flat_triplet), vfi::IoError);
    CHECK_THROWS_AS(vfi::scan_dataset(dir.path() / "missing", DatasetLayout::flat_triplet),
                    vfi::IoError);
    CHECK_THROWS_AS(vfi::parse_layout("bogus"), std::invalid_argument);
}

TEST_CASE("subsample is deterministic, sorted, and a subset") {
    testutil::TempDir dir("sub");
    const auto root = dir.path();
    for (int i = 0; i < 100; ++i) {
        char name[8];
        std::snprintf(name, sizeof(name), "c%03d", i);
        for (const char* im : {"im1.png", "im2.png", "im3.png"}) touch(root / name / im);
    }
    const DatasetManifest all = vfi::scan_dataset(root, DatasetLayout::flat_triplet);
    REQUIRE(all.samples.size() == 100);

    SUBCASE("n = size is the identity") {
        const DatasetManifest same = vfi::subsample(all, 100, 7);
        REQUIRE(same.samples.size() == 100);
        for (std::size_t i = 0; i < 100; ++i) CHECK(same.samples[i].id == all.samples[i].id);
    }

    SUBCASE("fixed seed always picks the same subset") {
        const DatasetManifest a = vfi::subsample(all, 10, 1234);
        const DatasetManifest b = vfi::subsample(all, 10, 1234);
        REQUIRE(a.samples.size() == 10);
        for (std::size_t i = 0; i < 10; ++i) CHECK(a.samples[i].id == b.samples[i].id);
        const DatasetManifest single_a = vfi::subsample(all, 1, 99);
        const DatasetManifest single_b = vfi::subsample(all, 1, 99);
        CHECK(single_a.samples[0].id == single_b.samples[0].id);
    }

    SUBCASE("subset relation and ordering") {
        const DatasetManifest sub = vfi::subsample(all, 25, 5);
        REQUIRE(sub.samples.size() == 25);
        for (std::size_t i = 1; i < sub.samples.size(); ++i)
            CHECK(sub.samples[i - 1].id < sub.samples[i].id);
        for (const auto& s : sub.samples) {
            const bool found = std::any_of(all.samples.begin(), all.samples.end(),
                                           [&](const auto& o) { return o.id == s.id; });
            CHECK(found);
        }
    }

    SUBCASE("bounds") {
        CHECK_THROWS_AS(vfi::subsample(all, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(vfi::subsample(all, 101, 1), std::invalid_argument);
    }
}

TEST_CASE("manifest json round-trip") {
    testutil::TempDir dir("manifest");
    const auto root = dir.path();
    for (const char* im : {"im1.png", "im2.png", "im3.png"}) touch(root / "clip" / im);
    const DatasetManifest m = vfi::scan_dataset(root, DatasetLayout::flat_triplet);

    const auto path = dir.path() / "manifest.json";
    vfi::save_manifest(m, path);
    const DatasetManifest back = vfi::load_manifest(path);
    CHECK(back.layout == m.layout);
    REQUIRE(back.samples.size() == 1);
    CHECK(back.samples[0].id == m.samples[0].id);
    CHECK(std::filesystem::weakly_canonical(back.samples[0].first) ==
          std::filesystem::weakly_canonical(m.samples[0].first));

    CHECK_THROWS_AS(vfi::load_manifest(dir.path() / "missing.json"), vfi::IoError);
    std::ofstream(dir.path() / "bad.json") << "{not json";
    CHECK_THROWS_AS(vfi::load_manifest(dir.path() / "bad.json"), vfi::IoError);
}
