#include "dispkit/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "dispkit/errors.hpp"

namespace dispkit {
namespace {

// Candidate faces (the folklore reduction):
//
// A box of maximal volume among boxes containing at most k points can always
// be grown until every face is blocked. A face is blocked either by the unit
// cube wall or by a point whose entry would push the count past k, and that
// point lies inside the box with respect to every other axis. Hence it is
// enough to enumerate, per axis, left faces at 0 (closed) or at a point
// coordinate (open, the box is the limit from the right), and right faces at
// a point coordinate or at 1 (both exclusive, so no flag is needed). On the
// torus the wall disappears; arcs are anchored at a point coordinate with
// open left face, plus the free full circle. An arc from a coordinate to
// itself is the full circle minus that coordinate (length 1, open); it is an
// actual member of the family only when anchored at 0, because (0,1) is.
//
// Inside the search, faces are generated from the coordinates of the points
// still inside the partial box (survivors): a blocking point must match every
// axis fixed so far, so survivor coordinates are a superset of the blockers.
// A face resting on a non-blocking coordinate could be grown further, giving
// strictly larger volume, so dropping such faces never loses the optimum or
// a tie. The brute-force oracle below uses all coordinates instead.

constexpr double kPruneSlack = 1.0 - 1e-12;

struct Window {
    double lo = 0.0;
    double len = 0.0;
    bool open = false;
    bool attained = true;
};

// Collects candidate boxes and keeps the best one. Shared by the search and
// the brute-force oracle so that the tie-break rule has a single definition;
// everything that decides which boxes get offered stays separate.
class ResultBuilder {
public:
    ResultBuilder(int d, bool periodic) : d_(d), periodic_(periodic) {}

    void offer(const std::vector<double>& lo, const std::vector<double>& len,
               const std::vector<std::uint8_t>& open, bool attained) {
        double vol = 1.0;
        for (int i = 0; i < d_; ++i) vol *= len[i];
        if (has_) {
            if (vol < value_) return;
            if (vol == value_ && !lex_smaller(lo, len, open)) return;
        }
        has_ = true;
        value_ = vol;
        anchor_ = lo;
        sides_ = len;
        open_ = open;
        attained_ = attained;
    }

    double value() const { return has_ ? value_ : -1.0; }
    bool has() const { return has_; }

    DispersionResult finish(std::uint64_t examined) const {
        DispersionResult r;
        r.value = value_;
        r.attained = attained_;
        r.boxes_examined = examined;
        std::vector<std::uint8_t> flags = open_;
        if (!std::any_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; }))
            flags.clear();
        if (periodic_) {
            PeriodicBox b;
            b.anchor = anchor_;
            b.sides = sides_;
            b.open_left = flags;
            r.witness = std::move(b);
        } else {
            AxisBox b;
            b.anchor = anchor_;
            b.sides = sides_;
            b.open_left = flags;
            r.witness = std::move(b);
        }
        return r;
    }

private:
    bool lex_smaller(const std::vector<double>& lo, const std::vector<double>& len,
                     const std::vector<std::uint8_t>& open) const {
        for (int i = 0; i < d_; ++i) {
            if (lo[i] != anchor_[i]) return lo[i] < anchor_[i];
        }
        for (int i = 0; i < d_; ++i) {
            if (len[i] != sides_[i]) return len[i] < sides_[i];
        }
        for (int i = 0; i < d_; ++i) {
            if (open[i] != open_[i]) return open[i] < open_[i];
        }
        return false;
    }

    int d_;
    bool periodic_;
    bool has_ = false;
    double value_ = 0.0;
    std::vector<double> anchor_, sides_;
    std::vector<std::uint8_t> open_;
    bool attained_ = true;
};

// Sorted coordinate multiset of the survivors on one axis, grouped into
// distinct values with multiplicities and prefix counts. For the cube,
// coordinates equal to 1 are dropped (no half-open box contains them); on
// the torus 1 is identified with 0.
struct AxisGroups {
    std::vector<double> value;
    std::vector<int> mult;
    std::vector<int> prefix;  // prefix[i] = points in groups 0..i-1
    int total = 0;

    void build(const PointSet& P, const std::vector<std::uint32_t>& surv, int axis,
               bool periodic) {
        std::vector<double> vals;
        vals.reserve(surv.size());
        for (std::uint32_t j : surv) {
            double v = P.at(j, axis);
            if (periodic) {
                if (v == 1.0) v = 0.0;
            } else if (v == 1.0) {
                continue;
            }
            vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        value.clear();
        mult.clear();
        for (std::size_t i = 0; i < vals.size();) {
            std::size_t j = i;
            while (j < vals.size() && vals[j] == vals[i]) ++j;
            value.push_back(vals[i]);
            mult.push_back(static_cast<int>(j - i));
            i = j;
        }
        prefix.assign(value.size() + 1, 0);
        for (std::size_t i = 0; i < value.size(); ++i) prefix[i + 1] = prefix[i] + mult[i];
        total = prefix.empty() ? 0 : prefix.back();
    }
};

// Best windows on a single cube axis: the longest candidate intervals holding
// at most k of the survivors. Returns every window within kPruneSlack of the
// maximum so that near-equal volumes still reach the canonical tie-break.
std::vector<Window> best_cube_windows(const AxisGroups& g, int k) {
    std::vector<Window> faces;
    const int r = static_cast<int>(g.value.size());
    // Left face at index f: f == -1 is the closed wall at 0, f >= 0 is the
    // open face at value[f]. The window may absorb whole groups to its right
    // while the absorbed count stays <= k.
    for (int f = -1; f < r; ++f) {
        double lo = (f < 0) ? 0.0 : g.value[f];
        // The closed wall window [0, hi) counts points at 0 as inside, so the
        // absorb loop starts at group 0 there; an open face skips its group.
        int t = (f < 0) ? 0 : f + 1;
        int inside = 0;
        while (t < r && inside + g.mult[t] <= k) {
            inside += g.mult[t];
            ++t;
        }
        double hi = (t < r) ? g.value[t] : 1.0;
        double len = hi - lo;
        if (len <= 0.0) continue;
        faces.push_back(Window{lo, len, f >= 0, f < 0});
    }
    double best = 0.0;
    for (const Window& w : faces) best = std::max(best, w.len);
    std::vector<Window> out;
    for (const Window& w : faces)
        if (w.len >= best * kPruneSlack) out.push_back(w);
    return out;
}

// Torus analogue: longest open arcs anchored at survivor coordinates holding
// at most k survivors, plus the free circle when everything fits.
std::vector<Window> best_torus_windows(const AxisGroups& g, int k) {
    std::vector<Window> faces;
    const int r = static_cast<int>(g.value.size());
    if (g.total <= k || r == 0) faces.push_back(Window{0.0, 1.0, false, true});
    for (int f = 0; f < r; ++f) {
        double lo = g.value[f];
        int inside = 0;
        int steps = 0;  // groups absorbed past the face
        while (steps < r - 1) {
            int t = (f + 1 + steps) % r;
            if (inside + g.mult[t] > k) break;
            inside += g.mult[t];
            ++steps;
        }
        Window w;
        w.lo = lo;
        w.open = true;
        // Arcs anchored open at a coordinate are limits of half-open arcs of
        // smaller length, so none of them count as attained.
        w.attained = false;
        if (steps == r - 1) {
            // every other group fits: full circle minus this coordinate
            w.len = 1.0;
        } else {
            int t = (f + 1 + steps) % r;
            w.len = wrap01(g.value[t] - lo);
        }
        if (w.len <= 0.0) continue;
        faces.push_back(w);
    }
    double best = 0.0;
    for (const Window& w : faces) best = std::max(best, w.len);
    std::vector<Window> out;
    for (const Window& w : faces)
        if (w.len >= best * kPruneSlack) out.push_back(w);
    return out;
}

struct Cand {
    double lo = 0.0;
    double len = 0.0;
    bool open = false;
    bool attained = true;
};

// All candidate intervals on an interior search axis, longest first.
std::vector<Cand> cube_candidates(const AxisGroups& g) {
    std::vector<Cand> cands;
    const int r = static_cast<int>(g.value.size());
    for (int f = -1; f < r; ++f) {
        double lo = (f < 0) ? 0.0 : g.value[f];
        bool open = f >= 0;
        for (int t = f + 1; t <= r; ++t) {
            double hi = (t < r) ? g.value[t] : 1.0;
            double len = hi - lo;
            if (len <= 0.0) continue;
            cands.push_back(Cand{lo, len, open, !open});
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.len > b.len; });
    return cands;
}

std::vector<Cand> torus_candidates(const AxisGroups& g) {
    std::vector<Cand> cands;
    const int r = static_cast<int>(g.value.size());
    cands.push_back(Cand{0.0, 1.0, false, true});  // free circle
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
            Cand c;
            c.lo = g.value[a];
            c.open = true;
            c.attained = false;
            c.len = (a == b) ? 1.0 : wrap01(g.value[b] - g.value[a]);
            if (c.len <= 0.0) continue;
            cands.push_back(c);
        }
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.len > y.len; });
    return cands;
}

class Engine {
public:
    Engine(const PointSet& P, int k, bool periodic)
        : P_(P), k_(k), periodic_(periodic), d_(P.d), builder_(P.d, periodic) {}

    DispersionResult run() {
        const int n = P_.size();
        cur_lo_.assign(d_, 0.0);
        cur_len_.assign(d_, 0.0);
        cur_open_.assign(d_, 0);
        cur_att_.assign(d_, 1);

        std::vector<std::uint32_t> all(n);
        std::iota(all.begin(), all.end(), 0u);

        // Slab pass: best single-axis window times the full extent elsewhere.
        // Seeds the incumbent and measures per-axis spread for the DFS order.
        std::vector<double> spread(d_, 1.0);
        for (int axis = 0; axis < d_; ++axis) {
            AxisGroups g;
            g.build(P_, all, axis, periodic_);
            std::vector<Window> ws =
                periodic_ ? best_torus_windows(g, k_) : best_cube_windows(g, k_);
            double mx = 0.0;
            for (const Window& w : ws) mx = std::max(mx, w.len);
            spread[axis] = mx;
            for (const Window& w : ws) {
                fill_free_all();
                set_axis(axis, w.lo, w.len, w.open, w.attained);
                offer_current();
            }
        }

        if (d_ > 1) {
            order_.resize(d_);
            std::iota(order_.begin(), order_.end(), 0);
            std::stable_sort(order_.begin(), order_.end(),
                             [&](int a, int b) { return spread[a] > spread[b]; });
            dfs(0, all, 1.0);
        }
        return builder_.finish(examined_);
    }

private:
    void fill_free_all() {
        for (int i = 0; i < d_; ++i) set_axis_free(i);
    }

    void set_axis_free(int axis) {
        cur_lo_[axis] = 0.0;
        cur_len_[axis] = 1.0;
        cur_open_[axis] = 0;
        cur_att_[axis] = 1;
    }

    void set_axis(int axis, double lo, double len, bool open, bool attained) {
        cur_lo_[axis] = lo;
        cur_len_[axis] = len;
        cur_open_[axis] = open ? 1 : 0;
        cur_att_[axis] = attained ? 1 : 0;
    }

    void offer_current() {
        ++examined_;
        bool att = true;
        for (int i = 0; i < d_; ++i) att = att && cur_att_[i] != 0;
        builder_.offer(cur_lo_, cur_len_, cur_open_, att);
    }

    bool in_candidate(double p, double lo, double len, bool open) const {
        if (periodic_) {
            double t = wrap01(p - lo);
            if (open && !(t > 0.0)) return false;
            return t < len;
        }
        if (open ? !(p > lo) : !(p >= lo)) return false;
        return p - lo < len;
    }

    void dfs(int depth, const std::vector<std::uint32_t>& surv, double partial) {
        const int axis = order_[depth];
        if (static_cast<int>(surv.size()) <= k_) {
            // Nothing left to dodge: the free completion is the largest and
            // lexicographically smallest finish of this branch.
            for (int t = depth; t < d_; ++t) set_axis_free(order_[t]);
            offer_current();
            return;
        }
        AxisGroups g;
        g.build(P_, surv, axis, periodic_);
        if (depth == d_ - 1) {
            std::vector<Window> ws =
                periodic_ ? best_torus_windows(g, k_) : best_cube_windows(g, k_);
            for (const Window& w : ws) {
                if (partial * w.len < builder_.value() * kPruneSlack) continue;
                set_axis(axis, w.lo, w.len, w.open, w.attained);
                offer_current();
            }
            return;
        }
        std::vector<Cand> cands = periodic_ ? torus_candidates(g) : cube_candidates(g);
        std::vector<std::uint32_t> child;
        child.reserve(surv.size());
        for (const Cand& c : cands) {
            ++examined_;
            if (partial * c.len < builder_.value() * kPruneSlack) break;  // sorted by len
            child.clear();
            for (std::uint32_t j : surv)
                if (in_candidate(P_.at(j, axis), c.lo, c.len, c.open)) child.push_back(j);
            set_axis(axis, c.lo, c.len, c.open, c.attained);
            dfs(depth + 1, child, partial * c.len);
        }
    }

    const PointSet& P_;
    int k_;
    bool periodic_;
    int d_;
    ResultBuilder builder_;
    std::vector<int> order_;
    std::vector<double> cur_lo_, cur_len_;
    std::vector<std::uint8_t> cur_open_, cur_att_;
    std::uint64_t examined_ = 0;
};

DispersionResult run_exact(const PointSet& P, int k, bool periodic) {
    P.validate();
    if (k < 0) throw input_error("k must be nonnegative");
    Engine e(P, k, periodic);
    return e.run();
}

}  // namespace

DispersionResult dispersion_exact(const PointSet& P) { return run_exact(P, 0, false); }

DispersionResult k_dispersion_exact(const PointSet& P, int k) { return run_exact(P, k, false); }

DispersionResult torus_dispersion_exact(const PointSet& P) { return run_exact(P, 0, true); }

DispersionResult torus_k_dispersion_exact(const PointSet& P, int k) {
    return run_exact(P, k, true);
}

DispersionResult brute_force_oracle(const PointSet& P, int k, bool periodic) {
    P.validate();
    if (k < 0) throw input_error("k must be nonnegative");
    if (P.d > 3 || P.size() > 12)
        throw input_error("brute_force_oracle is limited to d <= 3 and n <= 12");

    const int d = P.d;
    std::uint64_t examined = 0;
    ResultBuilder builder(d, periodic);

    // Candidate faces per axis from all point coordinates, walls included.
    std::vector<std::vector<Cand>> per_axis(d);
    for (int axis = 0; axis < d; ++axis) {
        std::vector<double> vals;
        for (int j = 0; j < static_cast<int>(P.size()); ++j) {
            double v = P.at(j, axis);
            if (periodic) {
                if (v == 1.0) v = 0.0;
            } else if (v == 1.0) {
                continue;
            }
            vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        std::vector<Cand>& cands = per_axis[axis];
        if (periodic) {
            cands.push_back(Cand{0.0, 1.0, false, true});
            for (double a : vals)
                for (double b : vals) {
                    Cand c;
                    c.lo = a;
                    c.open = true;
                    c.attained = false;
                    c.len = (a == b) ? 1.0 : wrap01(b - a);
                    if (c.len > 0.0) cands.push_back(c);
                }
        } else {
            std::vector<double> lows;
            lows.push_back(0.0);
            for (double v : vals) lows.push_back(v);
            for (std::size_t li = 0; li < lows.size(); ++li) {
                bool open = li > 0;
                for (double hi : vals) {
                    double len = hi - lows[li];
                    if (len > 0.0) cands.push_back(Cand{lows[li], len, open, !open});
                }
                double len = 1.0 - lows[li];
                if (len > 0.0) cands.push_back(Cand{lows[li], len, open, !open});
            }
        }
    }

    std::vector<std::size_t> idx(d, 0);
    std::vector<double> lo(d), len(d);
    std::vector<std::uint8_t> open(d);
    for (;;) {
        bool attained = true;
        for (int i = 0; i < d; ++i) {
            const Cand& c = per_axis[i][idx[i]];
            lo[i] = c.lo;
            len[i] = c.len;
            open[i] = c.open ? 1 : 0;
            attained = attained && c.attained;
        }
        ++examined;
        int count = 0;
        for (int j = 0; j < static_cast<int>(P.size()) && count <= k; ++j) {
            bool in = true;
            for (int i = 0; i < d && in; ++i) {
                double p = P.at(j, i);
                if (periodic) {
                    double t = wrap01(p - lo[i]);
                    if (open[i] && !(t > 0.0)) in = false;
                    else if (!(t < len[i])) in = false;
                } else {
                    if (open[i] ? !(p > lo[i]) : !(p >= lo[i])) in = false;
                    else if (!(p - lo[i] < len[i])) in = false;
                }
            }
            if (in) ++count;
        }
        if (count <= k) builder.offer(lo, len, open, attained);

        int axis = d - 1;
        while (axis >= 0) {
            if (++idx[axis] < per_axis[axis].size()) break;
            idx[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return builder.finish(examined);
}

double enumeration_cost_estimate(const PointSet& P, bool periodic) {
    const double n = static_cast<double>(P.size());
    double per_axis = periodic ? (n * n + n + 1.0) : ((n + 1.0) * (n + 2.0) / 2.0);
    double cost = n + 1.0;
    for (int i = 0; i < P.d - 1; ++i) cost *= per_axis;
    return cost;
}

}  // namespace dispkit
