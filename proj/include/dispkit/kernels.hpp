#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dispkit/geometry.hpp"

namespace dispkit::kernels {

// Structure-of-arrays layout for the counting kernels: column i holds
// coordinate i of every point contiguously.
struct PointsSoA {
    int d = 0;
    std::size_t n = 0;
    std::vector<double> cols;

    static PointsSoA from(const PointSet& P);
    const double* col(int i) const { return cols.data() + static_cast<std::size_t>(i) * n; }
};

// All kernels implement exactly the membership predicate of geometry.hpp:
//   cube:  (open ? p > lo : p >= lo) && (p - lo) < len   per axis
//   torus: t = wrap01(p - lo); (open ? t > 0 : true) && t < len
// The capped variants return min(true_count, cap), stopping early once the
// cap is reached; scalar and vector paths agree bit-for-bit on all inputs.

std::size_t count_in_box_scalar(const PointsSoA& pts, const double* lo,
                                const double* len, const std::uint8_t* open_left,
                                std::size_t cap);
std::size_t count_in_periodic_box_scalar(const PointsSoA& pts, const double* lo,
                                         const double* len, const std::uint8_t* open_left,
                                         std::size_t cap);

#if defined(DISPKIT_WITH_AVX2)
std::size_t count_in_box_avx2(const PointsSoA& pts, const double* lo,
                              const double* len, const std::uint8_t* open_left,
                              std::size_t cap);
std::size_t count_in_periodic_box_avx2(const PointsSoA& pts, const double* lo,
                                       const double* len, const std::uint8_t* open_left,
                                       std::size_t cap);
#endif

#if defined(DISPKIT_WITH_NEON)
std::size_t count_in_box_neon(const PointsSoA& pts, const double* lo,
                              const double* len, const std::uint8_t* open_left,
                              std::size_t cap);
std::size_t count_in_periodic_box_neon(const PointsSoA& pts, const double* lo,
                                       const double* len, const std::uint8_t* open_left,
                                       std::size_t cap);
#endif

enum class Impl { scalar, avx2, neon };

// Selected at first use from CPU features; DISPKIT_KERNEL=scalar|avx2|neon
// overrides. set_impl returns false when the variant is unavailable.
Impl active_impl();
bool set_impl(Impl impl);
void reset_impl();
const char* impl_name(Impl impl);

// Dispatched entry points.
std::size_t count_in_box(const PointsSoA& pts, const double* lo, const double* len,
                         const std::uint8_t* open_left,
                         std::size_t cap = static_cast<std::size_t>(-1));
std::size_t count_in_periodic_box(const PointsSoA& pts, const double* lo, const double* len,
                                  const std::uint8_t* open_left,
                                  std::size_t cap = static_cast<std::size_t>(-1));

// Convenience overloads taking the geometry types.
std::size_t count_in_box(const PointsSoA& pts, const AxisBox& b,
                         std::size_t cap = static_cast<std::size_t>(-1));
std::size_t count_in_periodic_box(const PointsSoA& pts, const PeriodicBox& b,
                                  std::size_t cap = static_cast<std::size_t>(-1));

}  // namespace dispkit::kernels
