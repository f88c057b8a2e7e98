// Acceptance harness: ten end-to-end criteria, one [PASS]/[FAIL] line each.
// With no arguments it runs the full list; otherwise each argument names a
// criterion (c1 .. c10) to run. Exits nonzero if any selected criterion
// fails. Each line carries a short summary and the wall time.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dispkit/bounds.hpp"
#include "dispkit/exact.hpp"
#include "dispkit/geometry.hpp"
#include "dispkit/io.hpp"
#include "dispkit/montecarlo.hpp"
#include "dispkit/nets.hpp"
#include "dispkit/rng.hpp"

using namespace dispkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool same_witness(const DispersionResult& a, const DispersionResult& b) {
    if (a.attained != b.attained || a.witness.index() != b.witness.index()) return false;
    if (a.witness.index() == 0) {
        const AxisBox &x = a.box(), &y = b.box();
        return x.anchor == y.anchor && x.sides == y.sides && x.open_left == y.open_left;
    }
    const PeriodicBox &x = a.periodic_box(), &y = b.periodic_box();
    return x.anchor == y.anchor && x.sides == y.sides && x.open_left == y.open_left;
}

PointSet single_point(int d, double v) {
    PointSet P(d);
    std::vector<double> row(d, v);
    P.append(row.data());
    return P;
}

PointSet equispaced(int n) {
    PointSet P(1);
    for (int i = 1; i <= n; ++i) {
        double x = static_cast<double>(i) / (n + 1);
        P.append(&x);
    }
    return P;
}

PointSet center_grid(int per_axis) {
    PointSet P(2);
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            double row[2] = {(i + 0.5) / per_axis, (j + 0.5) / per_axis};
            P.append(row);
        }
    return P;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- c1 ----
// Branch-and-bound agrees with the independent full enumeration on random
// instances, in value and in the exact witness, for cube and torus searches
// and k in {0, 1, 2}. Budget: 60 seconds.
Outcome c1_oracle_equivalence() {
    Philox meta(361);
    const auto start = std::chrono::steady_clock::now();
    int checked = 0;
    for (int periodic = 0; periodic <= 1; ++periodic) {
        for (int k = 0; k <= 2; ++k) {
            for (int i = 0; i < 200; ++i) {
                std::uint64_t cfg = static_cast<std::uint64_t>(periodic * 3 + k);
                int d = 1 + static_cast<int>(meta.uniform(cfg, i, 0, kDrawGeneric) * 3.0);
                int n = 1 + static_cast<int>(meta.uniform(cfg, i, 1, kDrawGeneric) * 8.0);
                if (d > 3) d = 3;
                if (n > 8) n = 8;
                PointSet P = sample_uniform(n, d, 9000 + cfg, i);
                DispersionResult fast = periodic ? torus_k_dispersion_exact(P, k)
                                                 : k_dispersion_exact(P, k);
                DispersionResult slow = brute_force_oracle(P, k, periodic != 0);
                if (std::abs(fast.value - slow.value) > 1e-12)
                    return {false, "value mismatch at config " + std::to_string(cfg) +
                                       " instance " + std::to_string(i)};
                if (!same_witness(fast, slow))
                    return {false, "witness mismatch at config " + std::to_string(cfg) +
                                       " instance " + std::to_string(i)};
                ++checked;
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 60.0) return {false, "took " + fmt(secs) + "s, budget is 60s"};
    return {true, std::to_string(checked) + " instances, values and witnesses identical"};
}

// ---------------------------------------------------------------- c2 ----
// Closed-form instances come out exactly right.
Outcome c2_known_values() {
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    for (int d = 1; d <= 4; ++d)
        if (!near(dispersion_exact(single_point(d, 0.5)).value, 0.5))
            return {false, "cube midpoint, d=" + std::to_string(d)};
    for (int n = 1; n <= 20; ++n)
        if (!near(dispersion_exact(equispaced(n)).value, 1.0 / (n + 1)))
            return {false, "equispaced n=" + std::to_string(n)};
    {
        PointSet P(2);
        double p1[2] = {1.0 / 3.0, 1.0 / 3.0};
        double p2[2] = {2.0 / 3.0, 2.0 / 3.0};
        P.append(p1);
        P.append(p2);
        if (!near(dispersion_exact(P).value, 4.0 / 9.0)) return {false, "diagonal pair"};
    }
    if (!near(torus_dispersion_exact(single_point(2, 0.5)).value, 1.0))
        return {false, "torus single point"};
    if (!near(k_dispersion_exact(equispaced(5), 2).value, 0.5))
        return {false, "five equispaced, k=2"};
    if (!near(k_dispersion_exact(equispaced(5), 0).value, 1.0 / 6.0))
        return {false, "five equispaced, k=0"};
    if (!near(torus_k_dispersion_exact(equispaced(3), 1).value, 0.75))
        return {false, "three equispaced torus, k=1"};
    if (dispersion_exact(PointSet(2)).value != 1.0) return {false, "empty set"};
    if (k_dispersion_exact(equispaced(4), 7).value != 1.0) return {false, "k >= n"};
    return {true, "midpoints, equispaced gaps, diagonal pair, torus arcs all exact"};
}

// ---------------------------------------------------------------- c3 ----
// Universal inequalities on random instances: dispersion >= 1/(n+1), and
// the torus value dominates the cube value.
Outcome c3_universal_inequalities() {
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        int d = 1 + (i % 3);
        int n = 1 + (i % 30);
        PointSet P = sample_uniform(n, d, 5150, i);
        double cube = dispersion_exact(P).value;
        double torus = torus_dispersion_exact(P).value;
        if (cube < 1.0 / (n + 1) - 1e-12)
            return {false, "disp < 1/(n+1) at instance " + std::to_string(i)};
        if (torus < cube - 1e-12)
            return {false, "torus < cube at instance " + std::to_string(i)};
        ++checked;
    }
    return {true, std::to_string(checked) + " instances satisfy both inequalities"};
}

// ---------------------------------------------------------------- c4 ----
// The approximation property of the constructed nets holds on 10^4 sampled
// boxes per configuration, with zero failures. Budget: 600 seconds.
Outcome c4_net_verification() {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t total_trials = 0, total_fast = 0;
    for (int d : {2, 3}) {
        for (double eps : {0.05, 0.1, 0.2}) {
            for (bool torus : {false, true}) {
                NetParams p = NetParams::make(d, eps);
                Net net = torus ? build_torus_net(p) : build_general_net(p);
                VerifyReport rep = verify_approximation(net, 10000, 1618);
                if (rep.failures != 0) {
                    std::ostringstream msg;
                    msg << "d=" << d << " eps=" << eps << (torus ? " torus" : " cube")
                        << ": " << rep.failures << " uncovered boxes";
                    return {false, msg.str()};
                }
                total_trials += rep.trials;
                total_fast += rep.fast_path_hits;
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 600.0) return {false, "took " + fmt(secs) + "s, budget is 600s"};
    std::ostringstream msg;
    msg << "12 configurations x 10000 boxes, 0 failures, fast path "
        << fmt(100.0 * total_fast / total_trials) << "%";
    return {true, msg.str()};
}

// ---------------------------------------------------------------- c5 ----
// Certification is sound and complete against the exact solver: certified
// implies value <= eps, and value < delta implies certified.
Outcome c5_certify_vs_exact() {
    NetParams p = NetParams::make(2, 0.2);
    Net net = build_general_net(p);
    int certified = 0, small_value = 0, checked = 0;
    auto check_one = [&](const PointSet& P) -> const char* {
        bool cert = net_certifies(net, P, 0).certified;
        double value = dispersion_exact(P).value;
        if (cert) ++certified;
        if (value < p.delta - 1e-12) ++small_value;
        if (cert && value > p.eps + 1e-12) return "certified but value above eps";
        if (value < p.delta - 1e-12 && !cert) return "value below delta but uncertified";
        ++checked;
        return nullptr;
    };
    for (int i = 0; i < 200; ++i) {
        PointSet P = sample_uniform(1 + (i * 7) % 60, 2, 2718, i);
        if (const char* err = check_one(P))
            return {false, std::string(err) + " at instance " + std::to_string(i)};
    }
    // denser sets so both implications actually fire
    for (int i = 0; i < 20; ++i) {
        PointSet P = sample_uniform(400, 2, 3141, 1000 + i);
        if (const char* err = check_one(P))
            return {false, std::string(err) + " at dense instance " + std::to_string(i)};
    }
    {
        NetParams pg = NetParams::make(2, 0.25, 1.0);
        Net fine = build_general_net(pg);
        PointSet G = center_grid(80);  // value 1/80 < delta = 0.015625
        bool cert = net_certifies(fine, G, 0).certified;
        double value = dispersion_exact(G).value;
        if (!cert) return {false, "80x80 grid not certified"};
        if (!(value < pg.delta - 1e-12)) return {false, "80x80 grid value not below delta"};
    }
    std::ostringstream msg;
    msg << checked << " sets consistent (" << certified << " certified, " << small_value
        << " below delta), grid case fires both implications";
    return {true, msg.str()};
}

// ---------------------------------------------------------------- c6 ----
// Anchored net volumes respect the delta0 floor and per-source lattice
// sizes respect the d^d / vol (cube) and (2d)^d / vol (torus) ceilings.
Outcome c6_anchored_budgets() {
    struct Cfg {
        int d;
        double eps, gamma;
    };
    double worst_cube = 0.0, worst_torus = 0.0;
    for (const Cfg& c : {Cfg{2, 0.25, 1.0}, Cfg{2, 0.2, 0.0}, Cfg{3, 0.1, 0.0},
                         Cfg{3, 0.05, 0.0}}) {
        NetParams p = NetParams::make(c.d, c.eps, c.gamma);
        Net net = build_anchored_net(p);
        if (net.elements.empty()) return {false, "empty anchored net"};
        for (const NetElement& e : net.elements) {
            double vol = e.volume();
            if (vol < p.delta0 * (1.0 - 1e-12))
                return {false, "element volume below delta0 floor"};
            double cube_count = 1.0, torus_count = 1.0;
            for (std::int64_t m : shift_lattice_shape(e.sides, p, false))
                cube_count *= static_cast<double>(m);
            for (std::int64_t m : shift_lattice_shape(e.sides, p, true))
                torus_count *= static_cast<double>(m);
            double cube_cap = std::pow(static_cast<double>(p.d), p.d) / vol;
            double torus_cap = std::pow(2.0 * p.d, p.d) / vol;
            if (cube_count > cube_cap * (1.0 + 1e-9))
                return {false, "cube lattice exceeds d^d / vol"};
            if (torus_count > torus_cap * (1.0 + 1e-9))
                return {false, "torus lattice exceeds (2d)^d / vol"};
            worst_cube = std::max(worst_cube, cube_count / cube_cap);
            worst_torus = std::max(worst_torus, torus_count / torus_cap);
        }
    }
    std::ostringstream msg;
    msg << "4 nets within budgets, worst cube ratio " << fmt(worst_cube)
        << ", worst torus ratio " << fmt(worst_torus);
    return {true, msg.str()};
}

// ---------------------------------------------------------------- c7 ----
// Sampling n = ceil(main bound) points certifies dispersion < eps nearly
// always. Budget: 300 seconds.
Outcome c7_main_bound_experiment() {
    const auto start = std::chrono::steady_clock::now();
    BoundValue b = thm_main_bound(0.2, 2);
    if (b.integer_value != 1966.0)
        return {false, "expected ceil(bound) = 1966, got " + fmt(b.integer_value)};
    NetParams p = NetParams::make(2, 0.2);
    ExperimentReport rep = run_net_experiment(p, NetKind::general, 0,
                                              static_cast<int>(b.integer_value), 100, 4001);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rep.fraction < 0.98) {
        return {false, "success fraction " + fmt(rep.fraction) + " below 0.98"};
    }
    if (secs > 300.0) return {false, "took " + fmt(secs) + "s, budget is 300s"};
    std::ostringstream msg;
    msg << "n=1966: fraction " << fmt(rep.fraction) << " over 100 trials (floor "
        << fmt(rep.prob_floor) << (rep.floor_applies ? ", applies)" : ", not yet)");
    return {true, msg.str()};
}

// ---------------------------------------------------------------- c8 ----
// Same experiment for k = 2 with the k-point lemma's sample size. Budget:
// 300 seconds.
Outcome c8_k_bound_experiment() {
    const auto start = std::chrono::steady_clock::now();
    NetParams p = NetParams::make(2, 0.2);
    Net net = build_general_net(p);
    double sz = static_cast<double>(net.elements.size());
    BoundValue lemma = lemma_k_unb_bound(sz, p.delta, 2);
    int n = static_cast<int>(lemma.integer_value);
    ExperimentReport rep = run_net_experiment(p, NetKind::general, 2, n, 100, 4002);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rep.fraction < 0.98) {
        return {false, "success fraction " + fmt(rep.fraction) + " below 0.98"};
    }
    if (secs > 300.0) return {false, "took " + fmt(secs) + "s, budget is 300s"};
    std::ostringstream msg;
    msg << "|N|=" << net.elements.size() << ", n=" << n << ", k=2: fraction "
        << fmt(rep.fraction) << " over 100 trials";
    return {true, msg.str()};
}

// ---------------------------------------------------------------- c9 ----
// Bound formulas match the frozen high-precision reference table.
struct BoundsRow {
    const char* id;
    double eps;
    int d;
    int k;
    double expect;
};

#include "bounds_reference.inc"

Outcome c9_bounds_table() {
    int rows = 0;
    for (const BoundsRow& r : kBoundsReference) {
        std::string id = r.id;
        BoundValue b;
        if (id == "thm_main") b = thm_main_bound(r.eps, r.d);
        else if (id == "thm_torus") b = thm_torus_bound(r.eps, r.d);
        else if (id == "thm_k") b = thm_k_bound(r.eps, r.d, r.k);
        else if (id == "lemma_unb") b = lemma_unb_bound(r.d, r.eps);
        else if (id == "lemma_k_unb") b = lemma_k_unb_bound(r.d, r.eps, r.k);
        else if (id == "rz_cover") b = rz_cover_bound(r.d, r.eps);
        else if (id == "theta_m") b = theta_m_bound(r.d);
        else if (id == "sosnovec") b = sosnovec_bound(r.eps);
        else if (id == "mackay") b = mackay_bound(r.eps);
        else if (id == "large_eps") b = large_eps_bound(r.eps);
        else if (id == "best_known") b = best_known_upper(r.eps, r.d);
        else if (id.rfind("lower_", 0) == 0)
            b = lower_bound(r.eps, r.d < 1 ? 1 : r.d, lower_variant_from_name(id.substr(6)));
        else return {false, "unknown row id " + id};
        if (std::abs(b.value - r.expect) > 1e-9 * std::abs(r.expect))
            return {false, id + " off at eps=" + fmt(r.eps) + " d=" + std::to_string(r.d)};
        if (id == "best_known" && b.regime != r.k)
            return {false, "best_known regime mismatch at eps=" + fmt(r.eps)};
        ++rows;
    }
    if (rows < 50) return {false, "reference table has only " + std::to_string(rows) + " rows"};
    for (double eps : {0.5, 0.6, 0.75, 0.9, 0.99})
        if (large_eps_bound(eps).value != 1.0)
            return {false, "large-eps bound not exactly 1 at eps=" + fmt(eps)};
    return {true, std::to_string(rows) + " rows within 1e-9, large-eps exactly 1 from 1/2"};
}

// --------------------------------------------------------------- c10 ----
// CLI reproducibility: identical bytes across reruns and thread counts.
Outcome c10_cli_reproducibility() {
    const fs::path dir = fs::current_path() / "acceptance_tmp";
    fs::create_directories(dir);
    auto run = [&](const std::string& args, const std::string& tag) -> std::string {
        fs::path out = dir / (tag + ".out");
        std::string cmd = std::string(DISPKIT_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + (dir / (tag + ".err")).string();
        int rc = std::system(cmd.c_str());
        if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0) return std::string();
        std::ifstream in(out, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    struct Case {
        const char* name;
        std::string args;
        std::vector<int> threads;
    };
    const Case cases[] = {
        {"mc-net", "mc net --d 2 --eps 0.25 --gamma 1 --k 0 --n 150 --trials 12 --seed 31",
         {1, 2, 8}},
        {"mc-disp", "mc disp --d 2 --eps 0.3 --n 10 --k 1 --trials 10 --seed 7 --method exact",
         {1, 2, 8}},
        {"mc-invert", "mc invert --d 1 --eps 0.26 --target 0.5 --trials 40 --seed 123",
         {1, 2}},
    };
    for (const Case& c : cases) {
        std::string base;
        for (int t : c.threads) {
            std::string got = run(c.args + " --threads " + std::to_string(t),
                                  std::string(c.name) + "_t" + std::to_string(t));
            if (got.empty()) return {false, std::string(c.name) + " failed to run"};
            if (base.empty())
                base = got;
            else if (got != base)
                return {false, std::string(c.name) + " differs at --threads " +
                                   std::to_string(t)};
        }
        std::string rerun = run(c.args + " --threads " + std::to_string(c.threads[0]),
                                std::string(c.name) + "_rerun");
        if (rerun != base) return {false, std::string(c.name) + " differs across reruns"};
    }

    fs::path netfile = dir / "net.jsonl";
    if (run("net build --d 2 --eps 0.25 --gamma 1 --kind general --out " + netfile.string(),
            "build")
            .empty())
        return {false, "net build failed"};
    std::string v1 = run("net verify --net " + netfile.string() + " --trials 1000 --seed 42",
                         "verify1");
    std::string v2 = run("net verify --net " + netfile.string() + " --trials 1000 --seed 42",
                         "verify2");
    if (v1.empty() || v1 != v2) return {false, "net verify not reproducible"};
    if (v1.find("\"failures\":0") == std::string::npos)
        return {false, "net verify reported failures"};
    return {true, "3 experiments x thread counts, reruns, and net verify all byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        const char* name;
        const char* label;
        std::function<Outcome()> fn;
    };
    const Entry entries[] = {
        {"c1", "exact solver vs enumeration oracle", c1_oracle_equivalence},
        {"c2", "closed-form instances", c2_known_values},
        {"c3", "universal inequalities", c3_universal_inequalities},
        {"c4", "net approximation audit", c4_net_verification},
        {"c5", "certification vs exact values", c5_certify_vs_exact},
        {"c6", "anchored net budgets", c6_anchored_budgets},
        {"c7", "main-bound sample size experiment", c7_main_bound_experiment},
        {"c8", "k-bound sample size experiment", c8_k_bound_experiment},
        {"c9", "bound formula reference table", c9_bounds_table},
        {"c10", "CLI reproducibility", c10_cli_reproducibility},
    };

    std::vector<std::string> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(argv[i]);

    int failures = 0;
    int ran = 0;
    for (const Entry& e : entries) {
        if (!selected.empty()) {
            bool wanted = false;
            for (const std::string& s : selected) wanted = wanted || s == e.name;
            if (!wanted) continue;
        }
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", e.name, e.label,
                    out.detail.c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no such criterion; expected c1 .. c10\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
