#include "dispkit/kernels.hpp"

namespace dispkit::kernels {

PointsSoA PointsSoA::from(const PointSet& P) {
    PointsSoA s;
    s.d = P.d;
    s.n = P.size();
    s.cols.resize(static_cast<std::size_t>(s.d) * s.n);
    for (std::size_t j = 0; j < s.n; ++j) {
        for (int i = 0; i < s.d; ++i) {
            s.cols[static_cast<std::size_t>(i) * s.n + j] = P.at(j, i);
        }
    }
    return s;
}

std::size_t count_in_box_scalar(const PointsSoA& pts, const double* lo,
                                const double* len, const std::uint8_t* open_left,
                                std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < pts.n; ++j) {
        bool in = true;
        for (int i = 0; i < pts.d; ++i) {
            double p = pts.col(i)[j];
            if (open_left && open_left[i]) {
                if (!(p > lo[i])) { in = false; break; }
            } else {
                if (!(p >= lo[i])) { in = false; break; }
            }
            if (!(p - lo[i] < len[i])) { in = false; break; }
        }
        if (in && ++count >= cap) return cap;
    }
    return count;
}

std::size_t count_in_periodic_box_scalar(const PointsSoA& pts, const double* lo,
                                         const double* len, const std::uint8_t* open_left,
                                         std::size_t cap) {
    if (cap == 0) return 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < pts.n; ++j) {
        bool in = true;
        for (int i = 0; i < pts.d; ++i) {
            double t = pts.col(i)[j] - lo[i];
            if (t < 0.0) t += 1.0;
            if (t >= 1.0) t -= 1.0;
            if (open_left && open_left[i] && !(t > 0.0)) { in = false; break; }
            if (!(t < len[i])) { in = false; break; }
        }
        if (in && ++count >= cap) return cap;
    }
    return count;
}

}  // namespace dispkit::kernels
