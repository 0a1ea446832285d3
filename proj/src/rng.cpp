#include "maglab/rng.hpp"

#include <cmath>

namespace maglab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Philox4x64::fill_block() {
    std::uint64_t x0 = ctr_[0], x1 = ctr_[1], x2 = ctr_[2], x3 = ctr_[3];
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t hi0 = mulhi(x0, kMul0);
        const std::uint64_t lo0 = x0 * kMul0;
        const std::uint64_t hi1 = mulhi(x2, kMul1);
        const std::uint64_t lo1 = x2 * kMul1;
        x0 = hi1 ^ x1 ^ k0;
        x1 = lo1;
        x2 = hi0 ^ x3 ^ k1;
        x3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    buf_ = {x0, x1, x2, x3};
    if (++ctr_[0] == 0)
        if (++ctr_[1] == 0)
            if (++ctr_[2] == 0) ++ctr_[3];
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0,1], u2 in [0,1): log(u1) is always finite.
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace maglab
