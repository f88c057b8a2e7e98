#include <cstdlib>
#include <cstring>

#include "dispkit/kernels.hpp"

namespace dispkit::kernels {

namespace {

Impl detect_impl() {
    const char* env = std::getenv("DISPKIT_KERNEL");
    if (env) {
        if (std::strcmp(env, "scalar") == 0) return Impl::scalar;
#if defined(DISPKIT_WITH_AVX2)
        if (std::strcmp(env, "avx2") == 0 && __builtin_cpu_supports("avx2")) return Impl::avx2;
#endif
#if defined(DISPKIT_WITH_NEON)
        if (std::strcmp(env, "neon") == 0) return Impl::neon;
#endif
        return Impl::scalar;
    }
#if defined(DISPKIT_WITH_AVX2)
    if (__builtin_cpu_supports("avx2")) return Impl::avx2;
#endif
#if defined(DISPKIT_WITH_NEON)
    return Impl::neon;
#endif
    return Impl::scalar;
}

Impl& current() {
    static Impl impl = detect_impl();
    return impl;
}

bool available(Impl impl) {
    switch (impl) {
        case Impl::scalar:
            return true;
        case Impl::avx2:
#if defined(DISPKIT_WITH_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Impl::neon:
#if defined(DISPKIT_WITH_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

}  // namespace

Impl active_impl() { return current(); }

bool set_impl(Impl impl) {
    if (!available(impl)) return false;
    current() = impl;
    return true;
}

void reset_impl() { current() = detect_impl(); }

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::scalar: return "scalar";
        case Impl::avx2: return "avx2";
        case Impl::neon: return "neon";
    }
    return "unknown";
}

std::size_t count_in_box(const PointsSoA& pts, const double* lo, const double* len,
                         const std::uint8_t* open_left, std::size_t cap) {
    switch (current()) {
#if defined(DISPKIT_WITH_AVX2)
        case Impl::avx2:
            return count_in_box_avx2(pts, lo, len, open_left, cap);
#endif
#if defined(DISPKIT_WITH_NEON)
        case Impl::neon:
            return count_in_box_neon(pts, lo, len, open_left, cap);
#endif
        default:
            return count_in_box_scalar(pts, lo, len, open_left, cap);
    }
}

std::size_t count_in_periodic_box(const PointsSoA& pts, const double* lo, const double* len,
                                  const std::uint8_t* open_left, std::size_t cap) {
    switch (current()) {
#if defined(DISPKIT_WITH_AVX2)
        case Impl::avx2:
            return count_in_periodic_box_avx2(pts, lo, len, open_left, cap);
#endif
#if defined(DISPKIT_WITH_NEON)
        case Impl::neon:
            return count_in_periodic_box_neon(pts, lo, len, open_left, cap);
#endif
        default:
            return count_in_periodic_box_scalar(pts, lo, len, open_left, cap);
    }
}

std::size_t count_in_box(const PointsSoA& pts, const AxisBox& b, std::size_t cap) {
    if (b.dim() != pts.d) throw input_error("box/point-set dimension mismatch");
    return count_in_box(pts, b.anchor.data(), b.sides.data(),
                        b.open_left.empty() ? nullptr : b.open_left.data(), cap);
}

std::size_t count_in_periodic_box(const PointsSoA& pts, const PeriodicBox& b, std::size_t cap) {
    if (b.dim() != pts.d) throw input_error("box/point-set dimension mismatch");
    return count_in_periodic_box(pts, b.anchor.data(), b.sides.data(),
                                 b.open_left.empty() ? nullptr : b.open_left.data(), cap);
}

}  // namespace dispkit::kernels
