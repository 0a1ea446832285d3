#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace maglab {

// A sampled Brownian path: increments dW_k ~ N(0, dt), k = 1..K.
// Regenerating from (seed, stream, dt, K) reproduces the sequence bit-for-bit.
struct WienerRealization {
    double dt = 0.0;
    std::vector<double> increments;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::size_t steps() const { return increments.size(); }
};

// A homodyne record: increments dY_k = 2 tr[rho jz] dt + dW_k. b_true is the
// field used while generating; absent for externally supplied records.
struct MeasurementRecord {
    double dt = 0.0;
    std::vector<double> increments;
    std::optional<double> b_true;

    std::size_t steps() const { return increments.size(); }
};

WienerRealization generate_wiener(double dt, std::size_t steps, std::uint64_t seed,
                                  std::uint64_t stream = 0);

// Plain-text record file:
//   # dt=<float>
//   # steps=<int>
//   # seed=<int or none>
//   # b_true=<float or none>
//   # kind=dW|dY
// then one increment per line, full double precision. Round-trips bit-exactly.
enum class RecordKind { wiener, measurement };

struct RecordFile {
    RecordKind kind = RecordKind::wiener;
    double dt = 0.0;
    std::size_t steps = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> b_true;
    std::vector<double> increments;

    WienerRealization to_wiener() const;        // requires kind == wiener
    MeasurementRecord to_measurement() const;   // requires kind == measurement
};

void save_record(const std::filesystem::path& path, const WienerRealization& w);
void save_record(const std::filesystem::path& path, const MeasurementRecord& r);
RecordFile load_record(const std::filesystem::path& path);  // throws ParseError

}  // namespace maglab
