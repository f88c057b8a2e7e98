#include "dispkit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "dispkit/bounds.hpp"
#include "dispkit/errors.hpp"
#include "dispkit/exact.hpp"
#include "dispkit/parallel.hpp"
#include "dispkit/rng.hpp"

namespace dispkit {
namespace {

std::string fmt_count(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Predicted heap footprint of one net element: three small vectors plus the
// struct itself. Deliberately generous.
double element_bytes(int d) { return 24.0 * d + 160.0; }

void check_net_budget(const NetParams& p, NetKind kind, std::uint64_t mem_budget) {
    double est = estimate_net_cardinality(p, kind);
    double bytes = est * element_bytes(p.d);
    if (!(bytes <= static_cast<double>(mem_budget)))
        throw resource_error("net would hold about " + fmt_count(est) +
                             " elements (~" + fmt_count(bytes) +
                             " bytes), over the memory budget of " +
                             std::to_string(mem_budget) + " bytes");
}

void check_enum_budget(const PointSet& P, bool periodic) {
    double est = enumeration_cost_estimate(P, periodic);
    if (est > kEnumWorkBudget)
        throw resource_error("exact search would examine about " + fmt_count(est) +
                             " candidate boxes, over the work budget of " +
                             fmt_count(kEnumWorkBudget));
}

Net build_net(const NetParams& p, NetKind kind) {
    switch (kind) {
        case NetKind::anchored: return build_anchored_net(p);
        case NetKind::general: return build_general_net(p);
        case NetKind::torus: return build_torus_net(p);
    }
    throw input_error("unknown net kind");
}

void aggregate(ExperimentReport& rep) {
    rep.successes = 0;
    for (const TrialRecord& r : rep.records)
        if (r.success) ++rep.successes;
    rep.fraction = rep.records.empty()
                       ? 0.0
                       : static_cast<double>(rep.successes) / rep.records.size();
}

}  // namespace

PointSet sample_uniform(int n, int d, std::uint64_t seed, std::uint64_t stream) {
    if (d < 1) throw input_error("dimension must be at least 1");
    if (n < 0) throw input_error("point count must be nonnegative");
    Philox rng(seed);
    PointSet P;
    P.d = d;
    P.coords.resize(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            P.coords[static_cast<std::size_t>(i) * d + j] = rng.uniform(
                stream, static_cast<std::uint64_t>(i), static_cast<std::uint32_t>(j),
                kDrawPointCoord);
    return P;
}

ExperimentReport run_net_experiment(const NetParams& p, NetKind kind, int k, int n,
                                    std::uint64_t trials, std::uint64_t seed, int threads,
                                    std::uint64_t mem_budget) {
    if (k < 0) throw input_error("k must be nonnegative");
    if (n < 0) throw input_error("point count must be nonnegative");
    if (trials < 1) throw input_error("need at least one trial");
    check_net_budget(p, kind, mem_budget);
    Net net = build_net(p, kind);

    ExperimentReport rep;
    rep.trials = trials;
    rep.net_size = net.elements.size();
    // The union-bound lemma promises success probability >= 1 - 1/|N| once n
    // reaches its sample bound; record the floor so callers can compare.
    if (net.elements.size() >= 3) {
        double delta = kind == NetKind::anchored ? p.delta0 : p.delta;
        double sz = static_cast<double>(net.elements.size());
        BoundValue lemma = k == 0 ? lemma_unb_bound(sz, delta)
                                  : lemma_k_unb_bound(sz, delta, k);
        rep.prob_floor = lemma.prob_floor;
        rep.floor_applies = static_cast<double>(n) >= lemma.integer_value;
    }

    rep.records.resize(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        PointSet P = sample_uniform(n, p.d, seed, t);
        CertifyReport c = net_certifies(net, P, k);
        TrialRecord& r = rep.records[t];
        r.trial = t;
        r.n = n;
        r.success = c.certified;
        r.deficient_boxes = c.deficient.size();
    });
    aggregate(rep);
    return rep;
}

DispMethod disp_method_from_name(const std::string& name) {
    if (name == "exact") return DispMethod::exact;
    if (name == "net_certify") return DispMethod::net_certify;
    throw input_error("unknown method '" + name + "' (expected exact or net_certify)");
}

ExperimentReport run_dispersion_experiment(int d, double eps, int n, int k,
                                           std::uint64_t trials, std::uint64_t seed,
                                           DispMethod method, bool torus, bool midpoint,
                                           int threads, std::uint64_t mem_budget) {
    if (d < 1) throw input_error("dimension must be at least 1");
    if (!(eps > 0.0) || !(eps < 1.0)) throw input_error("eps must lie in (0,1)");
    if (n < 0) throw input_error("point count must be nonnegative");
    if (k < 0) throw input_error("k must be nonnegative");
    if (trials < 1) throw input_error("need at least one trial");
    if (midpoint && n != 1)
        throw input_error("the midpoint configuration has exactly one point; use --n 1");

    Net net;
    if (method == DispMethod::net_certify) {
        NetParams p = NetParams::make(d, eps);
        NetKind kind = torus ? NetKind::torus : NetKind::general;
        check_net_budget(p, kind, mem_budget);
        net = build_net(p, kind);
    } else {
        check_enum_budget(sample_uniform(n, d, seed, 0), torus);
    }

    ExperimentReport rep;
    rep.trials = trials;
    rep.net_size = net.elements.size();
    rep.records.resize(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        PointSet P;
        if (midpoint) {
            P.d = d;
            P.coords.assign(static_cast<std::size_t>(d), 0.5);
        } else {
            P = sample_uniform(n, d, seed, t);
        }
        TrialRecord& r = rep.records[t];
        r.trial = t;
        r.n = n;
        if (method == DispMethod::exact) {
            DispersionResult res = torus ? torus_k_dispersion_exact(P, k)
                                         : k_dispersion_exact(P, k);
            r.dispersion_value = res.value;
            r.success = res.value <= eps;
        } else {
            CertifyReport c = net_certifies(net, P, k);
            r.success = c.certified;
            r.deficient_boxes = c.deficient.size();
        }
    });
    aggregate(rep);
    return rep;
}

InverseResult empirical_inverse(int d, double eps, int k, double target,
                                std::uint64_t trials_per_n, std::uint64_t seed,
                                int threads, int n_cap) {
    if (d < 1) throw input_error("dimension must be at least 1");
    if (!(eps > 0.0) || !(eps < 1.0)) throw input_error("eps must lie in (0,1)");
    if (k < 0) throw input_error("k must be nonnegative");
    if (!(target > 0.0) || !(target < 1.0))
        throw input_error("target fraction must lie strictly inside (0,1)");
    if (trials_per_n < 1) throw input_error("need at least one trial per n");
    if (n_cap < 1) throw input_error("n_cap must be positive");

    InverseResult out;
    std::map<int, double> cache;
    // One evaluation of the empirical success curve at sample size n. Trials
    // are coupled across n by the stream-prefix property, so each trial's
    // success is monotone in n and so is this fraction.
    auto fraction_at = [&](int n) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        check_enum_budget(sample_uniform(n, d, seed, 0), false);
        std::vector<std::uint8_t> ok(trials_per_n, 0);
        parallel_for(trials_per_n, threads, [&](std::size_t t) {
            PointSet P = sample_uniform(n, d, seed, t);
            ok[t] = k_dispersion_exact(P, k).value <= eps ? 1 : 0;
        });
        std::uint64_t s = 0;
        for (std::uint8_t v : ok) s += v;
        double f = static_cast<double>(s) / trials_per_n;
        cache.emplace(n, f);
        out.trace.emplace_back(n, f);
        return f;
    };

    // doubling probe for an upper bracket, then binary search inside it
    int hi = 1;
    double f = fraction_at(hi);
    while (f < target) {
        if (hi >= n_cap) {
            std::string trace;
            for (const auto& [n, fr] : out.trace)
                trace += " (" + std::to_string(n) + ", " + fmt_count(fr) + ")";
            throw resource_error("no n <= " + std::to_string(n_cap) +
                                 " reaches the target fraction; trace:" + trace);
        }
        hi = std::min(hi * 2, n_cap);
        f = fraction_at(hi);
    }
    int lo = hi / 2 + 1;  // fraction at hi/2 (if probed) fell short
    if (hi == 1) lo = 1;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (fraction_at(mid) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    out.n = hi;
    out.fraction = fraction_at(hi);
    return out;
}

}  // namespace dispkit
