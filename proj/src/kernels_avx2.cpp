// AVX2 variants of the counting kernels. This translation unit is the only
// one compiled with -mavx2; callers reach it through the runtime dispatch.
#include "dispkit/kernels.hpp"

#if defined(DISPKIT_WITH_AVX2) && defined(__AVX2__)

#include <immintrin.h>

namespace dispkit::kernels {

namespace {

inline __m256d all_true() {
    return _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
}

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

}  // namespace

std::size_t count_in_box_avx2(const PointsSoA& pts, const double* lo,
                              const double* len, const std::uint8_t* open_left,
                              std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    std::size_t j = 0;
    const std::size_t n4 = pts.n & ~static_cast<std::size_t>(3);
    for (; j < n4; j += 4) {
        __m256d m = all_true();
        for (int i = 0; i < pts.d; ++i) {
            __m256d p = _mm256_loadu_pd(pts.col(i) + j);
            __m256d vlo = _mm256_set1_pd(lo[i]);
            __m256d left = (open_left && open_left[i])
                               ? _mm256_cmp_pd(p, vlo, _CMP_GT_OQ)
                               : _mm256_cmp_pd(p, vlo, _CMP_GE_OQ);
            __m256d rel = _mm256_sub_pd(p, vlo);
            __m256d right = _mm256_cmp_pd(rel, _mm256_set1_pd(len[i]), _CMP_LT_OQ);
            m = _mm256_and_pd(m, _mm256_and_pd(left, right));
            if (_mm256_movemask_pd(m) == 0) break;
        }
        count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
        if (count >= cap) return cap;
    }
    for (; j < pts.n; ++j) {
        if (tail_point_in_box(pts, j, lo, len, open_left) && ++count >= cap) return cap;
    }
    return count;
}

std::size_t count_in_periodic_box_avx2(const PointsSoA& pts, const double* lo,
                                       const double* len, const std::uint8_t* open_left,
                                       std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    std::size_t j = 0;
    const std::size_t n4 = pts.n & ~static_cast<std::size_t>(3);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    for (; j < n4; j += 4) {
        __m256d m = all_true();
        for (int i = 0; i < pts.d; ++i) {
            __m256d p = _mm256_loadu_pd(pts.col(i) + j);
            __m256d t = _mm256_sub_pd(p, _mm256_set1_pd(lo[i]));
            // same correction sequence as wrap01: add 1 where negative,
            // then subtract 1 where the corrected value reaches 1
            __m256d neg = _mm256_cmp_pd(t, zero, _CMP_LT_OQ);
            t = _mm256_add_pd(t, _mm256_and_pd(neg, one));
            __m256d ge1 = _mm256_cmp_pd(t, one, _CMP_GE_OQ);
            t = _mm256_sub_pd(t, _mm256_and_pd(ge1, one));
            if (open_left && open_left[i]) {
                m = _mm256_and_pd(m, _mm256_cmp_pd(t, zero, _CMP_GT_OQ));
            }
            m = _mm256_and_pd(m, _mm256_cmp_pd(t, _mm256_set1_pd(len[i]), _CMP_LT_OQ));
            if (_mm256_movemask_pd(m) == 0) break;
        }
        count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
        if (count >= cap) return cap;
    }
    for (; j < pts.n; ++j) {
        if (tail_point_in_periodic(pts, j, lo, len, open_left) && ++count >= cap) return cap;
    }
    return count;
}

}  // namespace dispkit::kernels

#endif  // DISPKIT_WITH_AVX2 && __AVX2__
