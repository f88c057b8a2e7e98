// NEON variants of the counting kernels (aarch64), mirroring the AVX2 path
// two lanes at a time with the identical predicate sequence.
#include "dispkit/kernels.hpp"

#if defined(DISPKIT_WITH_NEON) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace dispkit::kernels {

namespace {

inline bool tail_point_in_box(const PointsSoA& pts, std::size_t j, const double* lo,
                              const double* len, const std::uint8_t* open_left) {
    for (int i = 0; i < pts.d; ++i) {
        double p = pts.col(i)[j];
        if (open_left && open_left[i]) {
            if (!(p > lo[i])) return false;
        } else {
            if (!(p >= lo[i])) return false;
        }
        if (!(p - lo[i] < len[i])) return false;
    }
    return true;
}

inline bool tail_point_in_periodic(const PointsSoA& pts, std::size_t j, const double* lo,
                                   const double* len, const std::uint8_t* open_left) {
    for (int i = 0; i < pts.d; ++i) {
        double t = pts.col(i)[j] - lo[i];
        if (t < 0.0) t += 1.0;
        if (t >= 1.0) t -= 1.0;
        if (open_left && open_left[i] && !(t > 0.0)) return false;
        if (!(t < len[i])) return false;
    }
    return true;
}

inline std::size_t mask_count(uint64x2_t m) {
    return (vgetq_lane_u64(m, 0) ? 1u : 0u) + (vgetq_lane_u64(m, 1) ? 1u : 0u);
}

}  // namespace

std::size_t count_in_box_neon(const PointsSoA& pts, const double* lo,
                              const double* len, const std::uint8_t* open_left,
                              std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    std::size_t j = 0;
    const std::size_t n2 = pts.n & ~static_cast<std::size_t>(1);
    for (; j < n2; j += 2) {
        uint64x2_t m = vdupq_n_u64(~0ull);
        for (int i = 0; i < pts.d; ++i) {
            float64x2_t p = vld1q_f64(pts.col(i) + j);
            float64x2_t vlo = vdupq_n_f64(lo[i]);
            uint64x2_t left = (open_left && open_left[i]) ? vcgtq_f64(p, vlo)
                                                          : vcgeq_f64(p, vlo);
            uint64x2_t right = vcltq_f64(vsubq_f64(p, vlo), vdupq_n_f64(len[i]));
            m = vandq_u64(m, vandq_u64(left, right));
            if (!(vgetq_lane_u64(m, 0) | vgetq_lane_u64(m, 1))) break;
        }
        count += mask_count(m);
        if (count >= cap) return cap;
    }
    for (; j < pts.n; ++j) {
        if (tail_point_in_box(pts, j, lo, len, open_left) && ++count >= cap) return cap;
    }
    return count;
}

std::size_t count_in_periodic_box_neon(const PointsSoA& pts, const double* lo,
                                       const double* len, const std::uint8_t* open_left,
                                       std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    std::size_t j = 0;
    const std::size_t n2 = pts.n & ~static_cast<std::size_t>(1);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (; j < n2; j += 2) {
        uint64x2_t m = vdupq_n_u64(~0ull);
        for (int i = 0; i < pts.d; ++i) {
            float64x2_t p = vld1q_f64(pts.col(i) + j);
            float64x2_t t = vsubq_f64(p, vdupq_n_f64(lo[i]));
            uint64x2_t neg = vcltq_f64(t, zero);
            t = vaddq_f64(t, vreinterpretq_f64_u64(vandq_u64(neg, vreinterpretq_u64_f64(one))));
            uint64x2_t ge1 = vcgeq_f64(t, one);
            t = vsubq_f64(t, vreinterpretq_f64_u64(vandq_u64(ge1, vreinterpretq_u64_f64(one))));
            if (open_left && open_left[i]) {
                m = vandq_u64(m, vcgtq_f64(t, zero));
            }
            m = vandq_u64(m, vcltq_f64(t, vdupq_n_f64(len[i])));
            if (!(vgetq_lane_u64(m, 0) | vgetq_lane_u64(m, 1))) break;
        }
        count += mask_count(m);
        if (count >= cap) return cap;
    }
    for (; j < pts.n; ++j) {
        if (tail_point_in_periodic(pts, j, lo, len, open_left) && ++count >= cap) return cap;
    }
    return count;
}

}  // namespace dispkit::kernels

#endif  // DISPKIT_WITH_NEON && __ARM_NEON
