#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "maglab/errors.hpp"
#include "maglab/record.hpp"
#include "maglab/rng.hpp"

using namespace maglab;

namespace {
std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("philox streams are deterministic and distinct") {
    Philox4x64 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool same_ab = true, same_ac = true, same_ad = true;
    for (int i = 0; i < 64; ++i) {
        const auto va = a();
        same_ab &= (va == b());
        same_ac &= (va == c());
        same_ad &= (va == d());
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);
}

TEST_CASE("normal stream has the right first two moments") {
    NormalStream n(7);
    const int count = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < count; ++i) {
        const double x = n.next();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / count;
    const double var = sum_sq / count - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(count)));
    CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("generate_wiener: empty, stats, determinism, rejection") {
    CHECK(generate_wiener(0.01, 0, 1).increments.empty());
    CHECK_THROWS_AS(generate_wiener(0.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_wiener(-1.0, 10, 1), std::invalid_argument);

    const double dt = 0.01;
    const std::size_t steps = 1000000;
    const WienerRealization w = generate_wiener(dt, steps, 2024);
    double sum = 0.0, sum_sq = 0.0;
    for (double x : w.increments) {
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / steps;
    const double var = sum_sq / steps - mean * mean;
    CHECK(std::abs(mean) < 4.0 * std::sqrt(dt / steps));
    CHECK(std::abs(var - dt) < 0.01 * dt);

    const WienerRealization w2 = generate_wiener(dt, steps, 2024);
    CHECK(w.increments == w2.increments);
    const WienerRealization w3 = generate_wiener(dt, steps, 2024, 5);
    CHECK(w.increments != w3.increments);
}

TEST_CASE("record files round-trip bit-exactly") {
    const auto path = temp_file("maglab_test_record.txt");

    WienerRealization w = generate_wiener(0.01, 257, 99);
    save_record(path, w);
    const RecordFile loaded = load_record(path);
    CHECK(loaded.kind == RecordKind::wiener);
    CHECK(loaded.dt == 0.01);
    CHECK(loaded.seed.has_value());
    CHECK(*loaded.seed == 99);
    CHECK_FALSE(loaded.b_true.has_value());
    CHECK(loaded.increments == w.increments);
    CHECK(loaded.to_wiener().increments == w.increments);
    CHECK_THROWS(loaded.to_measurement());

    MeasurementRecord r;
    r.dt = 0.0025;
    r.b_true = 1.5;
    r.increments = {1.0 / 3.0, -2.7182818284590452, 1e-300, 0.0};
    save_record(path, r);
    const RecordFile loaded2 = load_record(path);
    CHECK(loaded2.kind == RecordKind::measurement);
    CHECK(loaded2.b_true.has_value());
    CHECK(*loaded2.b_true == 1.5);
    CHECK(loaded2.increments == r.increments);

    r.b_true.reset();
    save_record(path, r);
    CHECK_FALSE(load_record(path).b_true.has_value());

    std::filesystem::remove(path);
}

TEST_CASE("malformed record files name the offending line") {
    const auto path = temp_file("maglab_test_bad_record.txt");

    {
        std::ofstream out(path);
        out << "# dt=0.01\n# steps=2\n# seed=none\n# b_true=none\n# kind=dY\n0.5\nnot_a_number\n";
    }
    try {
        load_record(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 7);
    }

    {
        std::ofstream out(path);
        out << "# dt=0.01\n# steps=3\n# seed=none\n# b_true=none\n# kind=dY\n0.5\n";
    }
    CHECK_THROWS_AS(load_record(path), ParseError);

    {
        std::ofstream out(path);
        out << "# dt=0.01\n# steps=0\n# seed=none\n# b_true=none\n# kind=dZ\n";
    }
    try {
        load_record(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
    }

    std::filesystem::remove(path);
}
