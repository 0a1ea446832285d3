#pragma once

#include <array>
#include <cstdint>

namespace maglab {

// Philox4x64-10 keyed counter generator (Random123 / numpy.random.Philox
// family). key = (seed, stream); block k of the keystream yields four 64-bit
// words, consumed in order. Parallel ensembles take one stream per worker.
class Philox4x64 {
public:
    explicit Philox4x64(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{seed, stream} {}

    std::uint64_t operator()() {
        if (pos_ == 4) {
            fill_block();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

private:
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static std::uint64_t mulhi(std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b)) >> 64);
    }

    void fill_block();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
};

// Standard-normal stream on top of Philox (Box-Muller). Deterministic for a
// fixed (seed, stream) pair.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed, std::uint64_t stream = 0) : gen_(seed, stream) {}

    double next();

private:
    Philox4x64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace maglab
