#pragma once

#include <cstdint>

namespace qsplit {

/// 64-bit linear congruential generator (Knuth's MMIX constants):
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
/// uniform() returns the top 53 bits scaled into [0, 1). Fully specified so
/// seeded runs reproduce bit-exactly across platforms.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace qsplit
