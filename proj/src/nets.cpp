#include "dispkit/nets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "dispkit/errors.hpp"
#include "dispkit/kernels.hpp"
#include "dispkit/rng.hpp"

namespace dispkit {
namespace {

constexpr double kEulerConst = 2.718281828459045235360287;

// Largest integer m with step*m <= cap + 1e-12, walked to agree exactly with
// later float comparisons against the same expressions.
int grid_limit(double step, double cap) {
    int m = static_cast<int>(std::floor(cap / step + 1e-12));
    while (step * (m + 1) <= cap + 1e-12) ++m;
    while (m > 0 && step * m > cap + 1e-12) --m;
    return m;
}

double binom(double n, double k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < static_cast<int>(k); ++i) r *= (n - i) / (i + 1);
    return r;
}

// Per-axis shift count: floor(1 - d + d/b) for the cube, floor(1 + d/b) on
// the torus, with the +1e-12 guard so b = d/(d-1+m) gives exactly m.
std::int64_t axis_shift_count(double b, int d, bool periodic) {
    double q = periodic ? 1.0 + d / b : 1.0 - d + d / b;
    std::int64_t m = static_cast<std::int64_t>(std::floor(q + 1e-12));
    return m < 1 ? 1 : m;
}

std::vector<double> sides_from_exponents(const std::vector<double>& y, double eps) {
    std::vector<double> b(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) b[i] = std::pow(eps, y[i]);
    return b;
}

bool anchored_sum_passes(const std::vector<double>& y) {
    double s = 0.0;
    for (double v : y) s += v;
    return s >= 1.0 - 1e-12;
}

using ElementKey = std::pair<std::int32_t, std::vector<std::int32_t>>;

std::map<ElementKey, std::size_t> index_elements(const Net& net) {
    std::map<ElementKey, std::size_t> m;
    for (std::size_t i = 0; i < net.elements.size(); ++i) {
        const NetElement& e = net.elements[i];
        m.emplace(ElementKey{e.source, e.shift}, i);
    }
    return m;
}

// Cube containment of a net element in the query box [w, w+a), with the
// derived-arithmetic tolerance.
bool contained_cube(const NetElement& e, const std::vector<double>& w,
                    const std::vector<double>& a) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (e.anchor[i] < w[i] - kGeomTol) return false;
        if (e.anchor[i] + e.sides[i] > w[i] + a[i] + kGeomTol) return false;
    }
    return true;
}

// Torus containment: the element arc starting at anchor must fit inside the
// query arc starting at w, measured going forward from w.
bool contained_torus(const NetElement& e, const std::vector<double>& w,
                     const std::vector<double>& a) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        double t = wrap01(e.anchor[i] - w[i]);
        if (t + e.sides[i] > a[i] + kGeomTol) return false;
    }
    return true;
}

}  // namespace

NetParams NetParams::make(int d, double eps, double gamma) {
    if (d < 2) throw input_error("net construction requires d >= 2");
    if (!(eps > 0.0) || !(eps < 1.0)) throw input_error("eps must lie in (0,1)");
    if (gamma <= 0.0) gamma = 1.0 / std::log(1.0 / eps);
    NetParams p;
    p.d = d;
    p.eps = eps;
    p.gamma = gamma;
    p.delta0 = std::pow(eps, 1.0 + gamma);
    p.delta = p.delta0 / 4.0;
    p.c_d = 1.0 - 1.0 / d;
    return p;
}

const char* net_kind_name(NetKind kind) {
    switch (kind) {
        case NetKind::anchored: return "anchored";
        case NetKind::general: return "general";
        case NetKind::torus: return "torus";
    }
    return "?";
}

NetKind net_kind_from_name(const std::string& name) {
    if (name == "anchored") return NetKind::anchored;
    if (name == "general") return NetKind::general;
    if (name == "torus") return NetKind::torus;
    throw input_error("unknown net kind '" + name + "'");
}

double NetElement::volume() const {
    double v = 1.0;
    for (double s : sides) v *= s;
    return v;
}

SimplexCover build_simplex_cover(int d, double gamma) {
    if (d < 2) throw input_error("simplex cover requires d >= 2");
    if (!(gamma > 0.0)) throw input_error("gamma must be positive");
    SimplexCover cover;
    cover.d = d;
    cover.gamma = gamma;
    cover.step = gamma / d;
    const int M = grid_limit(cover.step, 1.0 + gamma);

    // Odometer over k in Z>=0^d with sum k <= M, lexicographic order. The
    // order matters: round_to_cover binary-searches it.
    std::vector<int> k(d, 0);
    std::vector<double> y(d, 0.0);
    int depth = 0;
    int used = 0;
    for (;;) {
        if (depth == d) {
            cover.points.push_back(y);
            --depth;
            if (depth < 0) break;
            used -= k[depth];
        } else if (used + k[depth] > M) {
            k[depth] = 0;
            y[depth] = 0.0;
            --depth;
            if (depth < 0) break;
            used -= k[depth];
        } else {
            y[depth] = cover.step * k[depth];
            used += k[depth];
            ++depth;
            continue;
        }
        ++k[depth];
    }
    return cover;
}

int round_to_cover(const SimplexCover& cover, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != cover.d) throw input_error("dimension mismatch");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = std::max(x[i], 0.0);
        int k = static_cast<int>(std::ceil(xi / cover.step));
        while (cover.step * k < xi) ++k;  // ceiling in exact float terms
        while (k > 0 && cover.step * (k - 1) >= xi) --k;
        y[i] = cover.step * k;
    }
    auto it = std::lower_bound(cover.points.begin(), cover.points.end(), y);
    if (it == cover.points.end() || *it != y)
        throw std::logic_error("rounded exponent vector escaped the cover");
    return static_cast<int>(it - cover.points.begin());
}

Net build_anchored_net(const NetParams& p) {
    if (p.d < 2) throw input_error("net construction requires d >= 2");
    SimplexCover cover = build_simplex_cover(p.d, p.gamma);
    Net net;
    net.params = p;
    net.kind = NetKind::anchored;
    for (std::size_t idx = 0; idx < cover.points.size(); ++idx) {
        const std::vector<double>& y = cover.points[idx];
        // Only exponent sums >= 1 give volumes in [delta0, eps]; grid points
        // below the simplex are never selected by the rounding rule.
        if (!anchored_sum_passes(y)) continue;
        NetElement e;
        e.anchor.assign(p.d, 0.0);
        e.sides = sides_from_exponents(y, p.eps);
        e.periodic = false;
        e.source = static_cast<std::int32_t>(idx);
        net.elements.push_back(std::move(e));
    }
    return net;
}

std::vector<std::int64_t> shift_lattice_shape(const std::vector<double>& sides,
                                              const NetParams& p, bool periodic) {
    std::vector<std::int64_t> shape(sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i)
        shape[i] = axis_shift_count(sides[i], p.d, periodic);
    return shape;
}

std::vector<std::vector<double>> shift_lattice(const std::vector<double>& sides,
                                               const NetParams& p, bool periodic) {
    std::vector<std::int64_t> shape = shift_lattice_shape(sides, p, periodic);
    std::vector<std::vector<double>> out;
    const int d = static_cast<int>(sides.size());
    std::vector<std::int64_t> k(d, 1);
    for (;;) {
        std::vector<double> z(d);
        for (int i = 0; i < d; ++i) {
            double zi = k[i] * sides[i] / p.d;
            if (periodic) zi -= std::floor(zi);
            z[i] = zi;
        }
        out.push_back(std::move(z));
        int axis = d - 1;
        while (axis >= 0 && ++k[axis] > shape[axis]) k[axis--] = 1;
        if (axis < 0) break;
    }
    return out;
}

namespace {

Net build_shifted_net(const NetParams& p, bool periodic) {
    Net anchored = build_anchored_net(p);
    Net net;
    net.params = p;
    net.kind = periodic ? NetKind::torus : NetKind::general;
    const int d = p.d;
    for (const NetElement& src : anchored.elements) {
        const std::vector<double>& b = src.sides;
        std::vector<std::int64_t> shape = shift_lattice_shape(b, p, periodic);
        std::vector<double> scaled(d);
        for (int i = 0; i < d; ++i) scaled[i] = p.c_d * b[i];
        std::vector<std::int64_t> k(d, 1);
        for (;;) {
            NetElement e;
            e.anchor.resize(d);
            for (int i = 0; i < d; ++i) {
                double zi = k[i] * b[i] / d;
                if (periodic) zi -= std::floor(zi);
                e.anchor[i] = zi;
            }
            e.sides = scaled;
            e.periodic = periodic;
            e.source = src.source;
            e.shift.assign(k.begin(), k.end());
            net.elements.push_back(std::move(e));
            int axis = d - 1;
            while (axis >= 0 && ++k[axis] > shape[axis]) k[axis--] = 1;
            if (axis < 0) break;
        }
    }
    return net;
}

}  // namespace

Net build_general_net(const NetParams& p) { return build_shifted_net(p, false); }

Net build_torus_net(const NetParams& p) { return build_shifted_net(p, true); }

double estimate_net_cardinality(const NetParams& p, NetKind kind) {
    const double s = p.gamma / p.d;
    const int M = grid_limit(s, 1.0 + p.gamma);
    int tmin = static_cast<int>(std::ceil((1.0 - 1e-12) / s));
    while (tmin > 0 && s * (tmin - 1) >= 1.0 - 1e-12) --tmin;
    while (s * tmin < 1.0 - 1e-12) ++tmin;

    double anchored_count = 0.0;
    for (int t = tmin; t <= M; ++t) anchored_count += binom(t + p.d - 1.0, p.d - 1.0);
    if (kind == NetKind::anchored) return anchored_count;

    const bool periodic = kind == NetKind::torus;
    if (anchored_count <= 2e6) {
        // exact: walk the filtered cover and sum the lattice sizes
        SimplexCover cover = build_simplex_cover(p.d, p.gamma);
        double total = 0.0;
        for (const std::vector<double>& y : cover.points) {
            if (!anchored_sum_passes(y)) continue;
            std::vector<double> b = sides_from_exponents(y, p.eps);
            double prod = 1.0;
            for (double bi : b) prod *= static_cast<double>(axis_shift_count(bi, p.d, periodic));
            total += prod;
        }
        return total;
    }
    // too many sources to walk: use the per-source paper ceiling instead
    double per_b = periodic ? std::pow(2.0 * p.d, p.d) / p.delta0
                            : std::pow(std::log(kEulerConst / p.delta0), p.d) / p.delta0;
    return anchored_count * per_b;
}

double paper_cardinality_bound(const NetParams& p, NetKind kind) {
    const double d = p.d;
    double n0 = 7.0 * d * std::log(d) * std::pow(1.0 + 1.0 / p.gamma, d);
    if (kind == NetKind::anchored) return n0;
    if (kind == NetKind::torus) return n0 * std::pow(2.0 * d, d) / p.delta0;
    return n0 * std::pow(std::log(kEulerConst / p.delta0), d) / p.delta0;
}

VerifyReport verify_approximation(const Net& net, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw input_error("verification needs at least one trial");
    const NetParams& p = net.params;
    const int d = p.d;
    const bool torus = net.kind == NetKind::torus;
    const bool anchored = net.kind == NetKind::anchored;
    const double log_inv_eps = std::log(1.0 / p.eps);
    const double vol_floor =
        (anchored ? p.delta0 : p.delta) * (1.0 - kGeomTol);

    SimplexCover cover = build_simplex_cover(d, p.gamma);
    std::map<ElementKey, std::size_t> by_key = index_elements(net);

    Philox rng(seed);
    VerifyReport rep;
    rep.trials = trials;

    std::vector<double> expo(d), y(d), a(d), w(d), x(d);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        // exponents uniform on the simplex {y >= 0, sum y = 1}, via
        // normalized exponentials; sides eps^y then have volume eps
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            double u = rng.uniform(trial, 0, static_cast<std::uint32_t>(i), kDrawSimplex);
            expo[i] = -std::log1p(-u);
            sum += expo[i];
        }
        for (int i = 0; i < d; ++i) {
            y[i] = expo[i] / sum;
            a[i] = std::pow(p.eps, y[i]);
        }
        if (anchored) {
            std::fill(w.begin(), w.end(), 0.0);
        } else {
            for (int i = 0; i < d; ++i) {
                double u = rng.uniform(trial, 1, static_cast<std::uint32_t>(i), kDrawAnchor);
                w[i] = torus ? u : u * (1.0 - a[i]);
            }
        }
        // shrink to volume exactly eps (floating point may land a hair high)
        double vol = 1.0;
        for (int i = 0; i < d; ++i) vol *= a[i];
        if (vol > p.eps) {
            double f = std::pow(p.eps / vol, 1.0 / d);
            if (f < 1.0)
                for (int i = 0; i < d; ++i) a[i] *= f;
        }

        bool hit = false;
        // fast path: the constructive certificate from the proofs — round
        // the exponent vector up to the cover, then pick the lattice shift
        // right below the query anchor
        try {
            for (int i = 0; i < d; ++i) x[i] = std::log(1.0 / a[i]) / log_inv_eps;
            int src = round_to_cover(cover, x);
            ElementKey key;
            key.first = static_cast<std::int32_t>(src);
            if (!anchored) {
                std::vector<double> b = sides_from_exponents(cover.points[src], p.eps);
                key.second.resize(d);
                for (int i = 0; i < d; ++i)
                    key.second[i] = static_cast<std::int32_t>(
                        std::floor(d * w[i] / b[i]) + 1.0);
            }
            auto it = by_key.find(key);
            if (it != by_key.end()) {
                const NetElement& e = net.elements[it->second];
                bool ok = e.volume() >= vol_floor &&
                          (torus ? contained_torus(e, w, a) : contained_cube(e, w, a));
                if (ok) {
                    hit = true;
                    ++rep.fast_path_hits;
                }
            }
        } catch (const std::logic_error&) {
            // rounded point fell off the cover: resolved by the scan below
        }
        if (!hit) {
            for (const NetElement& e : net.elements) {
                if (e.volume() < vol_floor) continue;
                if (torus ? contained_torus(e, w, a) : contained_cube(e, w, a)) {
                    hit = true;
                    break;
                }
            }
        }
        if (!hit) {
            ++rep.failures;
            if (!rep.has_witness) {
                rep.has_witness = true;
                rep.witness_anchor = w;
                rep.witness_sides = a;
            }
        }
    }
    return rep;
}

int find_containing_element(const Net& net, const std::vector<double>& anchor,
                            const std::vector<double>& sides) {
    const int d = net.params.d;
    if (static_cast<int>(anchor.size()) != d || static_cast<int>(sides.size()) != d)
        throw input_error("dimension mismatch");
    std::vector<double> a = sides;
    double vol = 1.0;
    for (double v : a) vol *= v;
    if (vol > net.params.eps) {
        double f = std::pow(net.params.eps / vol, 1.0 / d);
        if (f < 1.0)
            for (double& v : a) v *= f;
    }
    const bool torus = net.kind == NetKind::torus;
    for (std::size_t i = 0; i < net.elements.size(); ++i) {
        const NetElement& e = net.elements[i];
        if (torus ? contained_torus(e, anchor, a) : contained_cube(e, anchor, a))
            return static_cast<int>(i);
    }
    return -1;
}

CertifyReport net_certifies(const Net& net, const PointSet& P, int k) {
    if (P.d != net.params.d) throw input_error("net and point set dimensions differ");
    if (k < 0) throw input_error("k must be nonnegative");
    P.validate();
    CertifyReport rep;
    rep.k = k;
    rep.elements = net.elements.size();
    kernels::PointsSoA pts = kernels::PointsSoA::from(P);
    const std::size_t need = static_cast<std::size_t>(k) + 1;
    for (std::size_t i = 0; i < net.elements.size(); ++i) {
        const NetElement& e = net.elements[i];
        std::size_t c = e.periodic
                            ? kernels::count_in_periodic_box(pts, e.anchor.data(),
                                                             e.sides.data(), nullptr, need)
                            : kernels::count_in_box(pts, e.anchor.data(), e.sides.data(),
                                                    nullptr, need);
        if (c < need) rep.deficient.push_back(static_cast<std::uint64_t>(i));
    }
    rep.certified = rep.deficient.empty();
    return rep;
}

}  // namespace dispkit
