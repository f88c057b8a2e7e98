#pragma once

#include <array>
#include <cstdint>

namespace dispkit {

// Counter-based generator (philox4x32, 10 rounds). Every draw is a pure
// function of (seed, trial, index, axis, purpose), so parallel workers can
// evaluate any subset of trials in any order and still produce the exact
// numbers a sequential run would. No generator state is ever carried.
class Philox {
public:
    explicit Philox(std::uint64_t seed)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)) {}

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::uint32_t k0, std::uint32_t k1);

    // Uniform double in [0,1) from the 64 high-quality bits of one block.
    // trial/index wider than 32 bits fold their high words into the counter.
    double uniform(std::uint64_t trial, std::uint64_t index,
                   std::uint32_t axis, std::uint32_t purpose) const;

private:
    std::uint32_t key0_;
    std::uint32_t key1_;
};

// Purpose tags keep unrelated draw families on disjoint counters.
enum : std::uint32_t {
    kDrawPointCoord = 0,
    kDrawSimplex = 1,
    kDrawAnchor = 2,
    kDrawGeneric = 3,
};

}  // namespace dispkit
