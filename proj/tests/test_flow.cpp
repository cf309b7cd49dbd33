#include <doctest.h>

#include <cstring>
#include <fstream>

#include "testutil.hpp"
#include "vfi/error.hpp"
#include "vfi/flow.hpp"

using vfi::FlowField;

namespace {

FlowField random_flow(int w, int h, testutil::Rng& rng, double range = 8.0) {
    FlowField f(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            f.u(x, y) = static_cast<float>(rng.uniform(-range, range));
            f.v(x, y) = static_cast<float>(rng.uniform(-range, range));
        }
    return f;
}

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("flo format: 1x1 file matches the byte layout") {
    testutil::TempDir dir("flo");
    FlowField f(1, 1);
    f.u(0, 0) = 1.5f;
    f.v(0, 0) = -2.0f;
    const auto path = dir.path() / "one.flo";
    vfi::save_flo(f, path.string());

    const auto bytes = slurp(path);
    REQUIRE(bytes.size() == 20);
    CHECK(std::memcmp(bytes.data(), "PIEH", 4) == 0);
    const std::int32_t one = 1;
    CHECK(std::memcmp(bytes.data() + 4, &one, 4) == 0);
    CHECK(std::memcmp(bytes.data() + 8, &one, 4) == 0);
    const float u = 1.5f, v = -2.0f;
    CHECK(std::memcmp(bytes.data() + 12, &u, 4) == 0);
    CHECK(std::memcmp(bytes.data() + 16, &v, 4) == 0);

    const FlowField back = vfi::load_flo(path.string());
    CHECK(back.u(0, 0) == 1.5f);
    CHECK(back.v(0, 0) == -2.0f);
}

TEST_CASE("flo round-trip is bit exact") {
    testutil::TempDir dir("floround");
    testutil::Rng rng(31);
    const FlowField f = random_flow(7, 5, rng);
    const auto path = (dir.path() / "rt.flo").string();
    vfi::save_flo(f, path);
    const FlowField back = vfi::load_flo(path);
    REQUIRE(back.width() == 7);
    REQUIRE(back.height() == 5);
    for (std::size_t i = 0; i < f.u_data().size(); ++i) {
        CHECK(back.u_data()[i] == f.u_data()[i]);
        CHECK(back.v_data()[i] == f.v_data()[i]);
    }
}

TEST_CASE("flo loader rejects bad magic and size mismatches") {
    testutil::TempDir dir("flobad");
    testutil::Rng rng(32);
    const FlowField f = random_flow(3, 2, rng);
    const auto good = dir.path() / "good.flo";
    vfi::save_flo(f, good.string());
    auto bytes = slurp(good);

    {
        auto bad = bytes;
        std::memcpy(bad.data(), "XXXX", 4);
        const auto path = dir.path() / "magic.flo";
        std::ofstream(path, std::ios::binary)
            .write(reinterpret_cast<char*>(bad.data()), static_cast<std::streamsize>(bad.size()));
        CHECK_THROWS_WITH_AS(vfi::load_flo(path.string()), doctest::Contains("magic"),
                             vfi::IoError);
    }
    {
        auto bad = bytes;
        bad.resize(bad.size() - 5);  // payload shorter than header promises
        const auto path = dir.path() / "short.flo";
        std::ofstream(path, std::ios::binary)
            .write(reinterpret_cast<char*>(bad.data()), static_cast<std::streamsize>(bad.size()));
        CHECK_THROWS_AS(vfi::load_flo(path.string()), vfi::IoError);
    }
    {
        auto bad = bytes;
        bad.push_back(0);  // trailing garbage
        const auto path = dir.path() / "long.flo";
        std::ofstream(path, std::ios::binary)
            .write(reinterpret_cast<char*>(bad.data()), static_cast<std::streamsize>(bad.size()));
        CHECK_THROWS_AS(vfi::load_flo(path.string()), vfi::IoError);
    }
    CHECK_THROWS_AS(vfi::load_flo((dir.path() / "missing.flo").string()), vfi::IoError);
}

TEST_CASE("scale_flow basics") {
    testutil::Rng rng(33);
    const FlowField f = random_flow(6, 4, rng);

    const FlowField zero = vfi::scale_flow(f, 0.0);
    for (float u : zero.u_data()) CHECK(u == 0.0f);
    for (float v : zero.v_data()) CHECK(v == 0.0f);

    const FlowField same = vfi::scale_flow(f, 1.0);
    CHECK(same.u_data() == f.u_data());
    CHECK(same.v_data() == f.v_data());

    FlowField g(1, 1);
    g.u(0, 0) = 4.0f;
    g.v(0, 0) = -2.0f;
    const FlowField half = vfi::scale_flow(g, 0.5);
    CHECK(half.u(0, 0) == 2.0f);
    CHECK(half.v(0, 0) == -1.0f);

    CHECK_THROWS_AS(vfi::scale_flow(f, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(vfi::scale_flow(f, 1.1), std::invalid_argument);
}

TEST_CASE("scale_flow composes exactly on dyadic factors") {
    testutil::Rng rng(34);
    const FlowField f = random_flow(5, 5, rng);
    for (const auto& [a, b] : {std::pair{0.5, 0.5}, {0.25, 0.5}, {1.0, 0.125}, {0.0, 0.75}}) {
        const FlowField lhs = vfi::scale_flow(vfi::scale_flow(f, a), b);
        const FlowField rhs = vfi::scale_flow(f, a * b);
        CHECK(lhs.u_data() == rhs.u_data());
        CHECK(lhs.v_data() == rhs.v_data());
    }
    // General factors agree to float rounding.
    for (int i = 0; i < 20; ++i) {
        const double a = rng.uniform();
        const double b = rng.uniform();
        const FlowField lhs = vfi::scale_flow(vfi::scale_flow(f, a), b);
        const FlowField rhs = vfi::scale_flow(f, a * b);
        for (std::size_t j = 0; j < lhs.u_data().size(); ++j) {
            CHECK(lhs.u_data()[j] == doctest::Approx(rhs.u_data()[j]).epsilon(1e-6));
            CHECK(lhs.v_data()[j] == doctest::Approx(rhs.v_data()[j]).epsilon(1e-6));
        }
    }
}
