#include "dispkit/rng.hpp"

namespace dispkit {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b,
                      std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> ctr,
                                           std::uint32_t k0, std::uint32_t k1) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kMul0, ctr[0], hi0, lo0);
        mul_hi_lo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return ctr;
}

double Philox::uniform(std::uint64_t trial, std::uint64_t index,
                       std::uint32_t axis, std::uint32_t purpose) const {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(trial),
        static_cast<std::uint32_t>(index),
        axis ^ (static_cast<std::uint32_t>(trial >> 32) << 8),
        purpose ^ (static_cast<std::uint32_t>(index >> 32) << 8),
    };
    auto out = block(ctr, key0_, key1_);
    std::uint64_t bits = out[0] | (static_cast<std::uint64_t>(out[1]) << 32);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace dispkit
