// dispkit: command line front end for the dispersion toolkit.
//
// Subcommands: disp, net build|verify|certify, bounds eval|regimes,
// mc net|disp|invert. Every command writes a config-echo header first so a
// saved output is self-describing, and every output is a pure function of
// the flags plus the seed. Exit codes: 0 computed, 2 bad input, 3 refused
// (resource limits), 4 internal failure.

#include <cinttypes>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dispkit/bounds.hpp"
#include "dispkit/errors.hpp"
#include "dispkit/exact.hpp"
#include "dispkit/io.hpp"
#include "dispkit/montecarlo.hpp"
#include "dispkit/nets.hpp"

namespace {

using namespace dispkit;

constexpr std::uint64_t kDefaultBudgetBytes = std::uint64_t{2} << 30;

std::string q(const std::string& s) { return "\"" + s + "\""; }

std::string j17(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s + "]";
}

std::string jflags(const std::vector<std::uint8_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i] ? "1" : "0";
    }
    return s + "]";
}

// Output sink: stdout by default, a file when --out is given. Identical
// bytes either way.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw input_error("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& s() { return *os; }
};

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed) {
    if (seed_given) return seed;
    const char* env = std::getenv("DISPKIT_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (!end || *end != '\0')
        throw input_error("DISPKIT_SEED is not an unsigned integer: '" + std::string(env) + "'");
    return v;
}

// Grid syntax: a single number, "a:b:s" for a, a+s, ..., up to b, or
// "log10:lo:hi:count" for count log-spaced points between 10^lo and 10^hi.
std::vector<double> parse_grid(const std::string& text) {
    auto bad = [&]() -> input_error {
        return input_error("malformed grid '" + text +
                           "' (expected VALUE, A:B:STEP, or log10:LO:HI:COUNT)");
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    auto num = [&](const std::string& t) {
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (t.empty() || !end || *end != '\0') throw bad();
        return v;
    };
    std::vector<double> out;
    if (parts.size() == 1) {
        out.push_back(num(parts[0]));
    } else if (parts.size() == 4 && parts[0] == "log10") {
        double lo = num(parts[1]), hi = num(parts[2]);
        double cnt = num(parts[3]);
        long n = static_cast<long>(cnt);
        if (n < 1 || static_cast<double>(n) != cnt) throw bad();
        for (long i = 0; i < n; ++i) {
            double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(std::pow(10.0, lo + t * (hi - lo)));
        }
    } else if (parts.size() == 3) {
        double a = num(parts[0]), b = num(parts[1]), s = num(parts[2]);
        if (!(s > 0.0) || b < a) throw bad();
        for (long i = 0;; ++i) {
            double v = a + i * s;
            if (v > b + s * 1e-9) break;
            out.push_back(v);
            if (i > 1000000) throw input_error("grid '" + text + "' has too many points");
        }
    } else {
        throw bad();
    }
    if (out.empty()) throw bad();
    return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
    std::vector<double> g = parse_grid(text);
    std::vector<int> out;
    for (double v : g) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw input_error("grid '" + text + "' must contain integers");
        out.push_back(i);
    }
    return out;
}

void check_net_budget_cli(const NetParams& p, NetKind kind, std::uint64_t budget) {
    double est = estimate_net_cardinality(p, kind);
    double bytes = est * (24.0 * p.d + 160.0);
    if (!(bytes <= static_cast<double>(budget))) {
        std::ostringstream msg;
        msg << "net would hold about " << est << " elements, over the memory budget of "
            << budget << " bytes (raise --mem-budget to proceed)";
        throw resource_error(msg.str());
    }
}

Net build_net_kind(const NetParams& p, NetKind kind) {
    switch (kind) {
        case NetKind::anchored: return build_anchored_net(p);
        case NetKind::general: return build_general_net(p);
        case NetKind::torus: return build_torus_net(p);
    }
    throw input_error("unknown net kind");
}

// ---------------------------------------------------------------- disp ----

struct DispArgs {
    std::string points;
    std::string out;
    int k = 0;
    bool torus = false;
};

void run_disp(const DispArgs& a) {
    PointSet P = read_point_set_file(a.points);
    if (a.k < 0) throw input_error("k must be nonnegative");
    double cost = enumeration_cost_estimate(P, a.torus);
    if (cost > kEnumWorkBudget) {
        std::ostringstream msg;
        msg << "exact search would examine about " << cost
            << " candidate boxes, over the work budget of " << kEnumWorkBudget;
        throw resource_error(msg.str());
    }
    DispersionResult r = a.torus ? torus_k_dispersion_exact(P, a.k)
                                 : k_dispersion_exact(P, a.k);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    os << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":\"disp\""
       << ",\"points\":" << q(a.points) << ",\"d\":" << P.d << ",\"n\":" << P.size()
       << ",\"k\":" << a.k << ",\"torus\":" << (a.torus ? "true" : "false") << "}\n";
    const std::vector<double>& anchor =
        a.torus ? r.periodic_box().anchor : r.box().anchor;
    const std::vector<double>& sides = a.torus ? r.periodic_box().sides : r.box().sides;
    const std::vector<std::uint8_t>& open =
        a.torus ? r.periodic_box().open_left : r.box().open_left;
    os << "{\"value\":" << fmt17(r.value) << ",\"attained\":"
       << (r.attained ? "true" : "false") << ",\"witness\":{\"anchor\":" << j17(anchor)
       << ",\"sides\":" << j17(sides) << ",\"open_left\":" << jflags(open)
       << ",\"periodic\":" << (a.torus ? "true" : "false")
       << "},\"boxes_examined\":" << r.boxes_examined << "}\n";
}

// ----------------------------------------------------------- net build ----

struct NetBuildArgs {
    int d = 2;
    double eps = 0.0;
    double gamma = 0.0;
    std::string kind = "general";
    bool torus = false;
    std::string out;
    std::uint64_t mem_budget = kDefaultBudgetBytes;
};

void run_net_build(const NetBuildArgs& a) {
    NetKind kind = a.torus ? NetKind::torus : net_kind_from_name(a.kind);
    NetParams p = NetParams::make(a.d, a.eps, a.gamma);
    check_net_budget_cli(p, kind, a.mem_budget);
    Net net = build_net_kind(p, kind);
    if (a.out.empty()) throw input_error("net build requires --out FILE");
    write_net_file(a.out, net);
    double paper = paper_cardinality_bound(p, kind);
    double count = static_cast<double>(net.elements.size());
    std::cout << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":\"net-build\""
              << ",\"d\":" << p.d << ",\"eps\":" << fmt17(p.eps) << ",\"gamma\":"
              << fmt17(p.gamma) << ",\"delta0\":" << fmt17(p.delta0) << ",\"delta\":"
              << fmt17(p.delta) << ",\"kind\":" << q(net_kind_name(kind)) << ",\"out\":"
              << q(a.out) << "}\n";
    std::cout << "{\"count\":" << net.elements.size() << ",\"paper_bound\":" << fmt17(paper)
              << ",\"count_over_paper_bound\":" << fmt17(count / paper) << "}\n";
}

// ---------------------------------------------------------- net verify ----

struct NetVerifyArgs {
    std::string net;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
};

void run_net_verify(const NetVerifyArgs& a) {
    Net net = read_net_file(a.net);
    std::uint64_t seed = resolve_seed(a.seed_given, a.seed);
    VerifyReport rep = verify_approximation(net, a.trials, seed);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    os << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":\"net-verify\""
       << ",\"net\":" << q(a.net) << ",\"kind\":" << q(net_kind_name(net.kind))
       << ",\"elements\":" << net.elements.size() << ",\"trials\":" << a.trials
       << ",\"seed\":" << seed << "}\n";
    os << "{\"failures\":" << rep.failures << ",\"fast_path_hits\":" << rep.fast_path_hits;
    if (rep.has_witness)
        os << ",\"witness\":{\"anchor\":" << j17(rep.witness_anchor)
           << ",\"sides\":" << j17(rep.witness_sides) << "}";
    os << "}\n";
}

// --------------------------------------------------------- net certify ----

struct NetCertifyArgs {
    std::string net;
    std::string points;
    int k = 0;
    std::string out;
};

void run_net_certify(const NetCertifyArgs& a) {
    Net net = read_net_file(a.net);
    PointSet P = read_point_set_file(a.points);
    CertifyReport rep = net_certifies(net, P, a.k);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    os << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":\"net-certify\""
       << ",\"net\":" << q(a.net) << ",\"points\":" << q(a.points) << ",\"k\":" << a.k
       << ",\"elements\":" << rep.elements << ",\"eps\":" << fmt17(net.params.eps) << "}\n";
    os << "{\"certified\":" << (rep.certified ? "true" : "false")
       << ",\"deficient_count\":" << rep.deficient.size();
    if (!rep.deficient.empty()) {
        os << ",\"deficient\":[";
        std::size_t show = std::min<std::size_t>(rep.deficient.size(), 32);
        for (std::size_t i = 0; i < show; ++i) {
            if (i) os << ",";
            os << rep.deficient[i];
        }
        os << "]" << ",\"deficient_truncated\":"
           << (rep.deficient.size() > 32 ? "true" : "false");
    }
    os << "}\n";
}

// --------------------------------------------------------- bounds eval ----

struct BoundsEvalArgs {
    std::string formulas;
    std::string eps_grid = "0.1";
    std::string d_grid = "2";
    int k = 0;
    double gamma = 1.0;
    std::string out;
};

BoundValue eval_formula(const std::string& id, double eps, int d, int k, double gamma) {
    if (id == "thm_main") return thm_main_bound(eps, d);
    if (id == "thm_torus") return thm_torus_bound(eps, d);
    if (id == "thm_k") return thm_k_bound(eps, d, k);
    // the lemma rows read the d column as the net size and eps as delta
    if (id == "lemma_unb") return lemma_unb_bound(static_cast<double>(d), eps);
    if (id == "lemma_k_unb") return lemma_k_unb_bound(static_cast<double>(d), eps, k);
    // the covering rows read the d column as m
    if (id == "rz_cover") return rz_cover_bound(d, gamma);
    if (id == "theta_m") return theta_m_bound(d);
    if (id == "lower_ahr") return lower_bound(eps, d, LowerVariant::ahr);
    if (id == "lower_bc") return lower_bound(eps, d, LowerVariant::bc);
    if (id == "lower_ullrich") return lower_bound(eps, d, LowerVariant::ullrich);
    if (id == "lower_trivial") return lower_bound(eps, d, LowerVariant::trivial);
    if (id == "lower_hkkr_random") return lower_bound(eps, d, LowerVariant::hkkr_random);
    if (id == "sosnovec") return sosnovec_bound(eps);
    if (id == "mackay") return mackay_bound(eps);
    if (id == "large_eps") return large_eps_bound(eps);
    if (id == "best_known") return best_known_upper(eps, d);
    throw input_error("unknown formula '" + id + "'");
}

void run_bounds_eval(const BoundsEvalArgs& a) {
    if (a.formulas.empty()) throw input_error("bounds eval requires --formula");
    std::vector<std::string> ids;
    std::string cur;
    for (char c : a.formulas) {
        if (c == ',') {
            if (!cur.empty()) ids.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) ids.push_back(cur);
    for (const std::string& id : ids) {
        static const char* known[] = {
            "thm_main",   "thm_torus",     "thm_k",        "lemma_unb",
            "lemma_k_unb", "rz_cover",      "theta_m",      "lower_ahr",
            "lower_bc",   "lower_ullrich", "lower_trivial", "lower_hkkr_random",
            "sosnovec",   "mackay",        "large_eps",    "best_known"};
        bool ok = false;
        for (const char* k : known) ok = ok || id == k;
        if (!ok) throw input_error("unknown formula '" + id + "'");
    }
    std::vector<double> epses = parse_grid(a.eps_grid);
    std::vector<int> ds = parse_int_grid(a.d_grid);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    os << "# dispkit-output v1\n";
    os << "# command=bounds-eval formula=" << a.formulas << " eps=" << a.eps_grid
       << " d=" << a.d_grid << " k=" << a.k << " gamma=" << fmt17(a.gamma) << "\n";
    os << "formula,eps,d,k,value,ceil,valid,constant_unspecified,regime,prob_floor,cap\n";
    for (const std::string& id : ids)
        for (int d : ds)
            for (double eps : epses) {
                BoundValue b = eval_formula(id, eps, d, a.k, a.gamma);
                os << b.formula_id << "," << fmt17(eps) << "," << d << "," << a.k << ","
                   << fmt17(b.value) << "," << fmt17(b.integer_value) << ","
                   << (b.valid ? 1 : 0) << "," << (b.constant_unspecified ? 1 : 0) << ","
                   << b.regime << "," << fmt17(b.prob_floor) << "," << fmt17(b.cap)
                   << "\n";
            }
}

// ------------------------------------------------------ bounds regimes ----

struct BoundsRegimesArgs {
    std::string eps_grid = "log10:-6:-0.31:12";
    std::string d_grid = "2";
    std::string out;
};

void run_bounds_regimes(const BoundsRegimesArgs& a) {
    std::vector<double> epses = parse_grid(a.eps_grid);
    std::vector<int> ds = parse_int_grid(a.d_grid);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    os << "# dispkit-output v1\n";
    os << "# command=bounds-regimes eps=" << a.eps_grid << " d=" << a.d_grid << "\n";
    os << "d,eps,regime,value,valid\n";
    for (int d : ds)
        for (double eps : epses) {
            BoundValue b = best_known_upper(eps, d);
            os << d << "," << fmt17(eps) << "," << b.regime << "," << fmt17(b.value) << ","
               << (b.valid ? 1 : 0) << "\n";
        }
}

// -------------------------------------------------------------- mc ... ----

struct McCommonArgs {
    int d = 2;
    double eps = 0.0;
    int k = 0;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
    std::uint64_t mem_budget = kDefaultBudgetBytes;
    std::string out;
    std::string format = "csv";
};

void check_format(const std::string& f) {
    if (f != "csv" && f != "jsonl")
        throw input_error("unknown format '" + f + "' (expected csv or jsonl)");
}

void write_experiment(std::ostream& os, const std::string& command,
                      const std::string& echo, const std::string& format,
                      const ExperimentReport& rep, int n, bool with_value) {
    if (format == "csv") {
        os << "# dispkit-output v1\n";
        os << "# command=" << command << " " << echo << "\n";
        os << (with_value ? "trial,n,success,dispersion_value\n"
                          : "trial,n,success,deficient_boxes\n");
        for (const TrialRecord& r : rep.records) {
            os << r.trial << "," << r.n << "," << (r.success ? 1 : 0) << ",";
            if (with_value)
                os << fmt17(r.dispersion_value);
            else
                os << r.deficient_boxes;
            os << "\n";
        }
        os << "# summary\n";
        os << "n,trials,successes,fraction,floor\n";
        os << n << "," << rep.trials << "," << rep.successes << "," << fmt17(rep.fraction)
           << "," << fmt17(rep.floor_applies ? rep.prob_floor : 0.0) << "\n";
    } else {
        os << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":" << q(command)
           << "," << echo << "}\n";
        for (const TrialRecord& r : rep.records) {
            os << "{\"trial\":" << r.trial << ",\"n\":" << r.n << ",\"success\":"
               << (r.success ? "true" : "false");
            if (with_value)
                os << ",\"dispersion_value\":" << fmt17(r.dispersion_value);
            else
                os << ",\"deficient_boxes\":" << r.deficient_boxes;
            os << "}\n";
        }
        os << "{\"summary\":{\"n\":" << n << ",\"trials\":" << rep.trials
           << ",\"successes\":" << rep.successes << ",\"fraction\":" << fmt17(rep.fraction)
           << ",\"floor\":" << fmt17(rep.floor_applies ? rep.prob_floor : 0.0)
           << ",\"net_size\":" << rep.net_size << "}}\n";
    }
}

struct McNetArgs : McCommonArgs {
    double gamma = 0.0;
    int n = 0;
    std::string kind = "general";
    bool torus = false;
};

void run_mc_net(const McNetArgs& a) {
    check_format(a.format);
    NetKind kind = a.torus ? NetKind::torus : net_kind_from_name(a.kind);
    NetParams p = NetParams::make(a.d, a.eps, a.gamma);
    std::uint64_t seed = resolve_seed(a.seed_given, a.seed);
    ExperimentReport rep = run_net_experiment(p, kind, a.k, a.n, a.trials, seed,
                                              a.threads, a.mem_budget);
    Sink sink;
    sink.open(a.out);
    std::ostringstream echo;
    if (a.format == "csv")
        echo << "d=" << a.d << " eps=" << fmt17(a.eps) << " gamma=" << fmt17(p.gamma)
             << " kind=" << net_kind_name(kind) << " k=" << a.k << " n=" << a.n
             << " trials=" << a.trials << " seed=" << seed << " net_size=" << rep.net_size;
    else
        echo << "\"d\":" << a.d << ",\"eps\":" << fmt17(a.eps) << ",\"gamma\":"
             << fmt17(p.gamma) << ",\"kind\":" << q(net_kind_name(kind)) << ",\"k\":" << a.k
             << ",\"n\":" << a.n << ",\"trials\":" << a.trials << ",\"seed\":" << seed;
    write_experiment(sink.s(), "mc-net", echo.str(), a.format, rep, a.n, false);
}

struct McDispArgs : McCommonArgs {
    int n = 0;
    std::string method = "exact";
    bool torus = false;
    bool midpoint = false;
};

void run_mc_disp(const McDispArgs& a) {
    check_format(a.format);
    DispMethod method = disp_method_from_name(a.method);
    std::uint64_t seed = resolve_seed(a.seed_given, a.seed);
    ExperimentReport rep =
        run_dispersion_experiment(a.d, a.eps, a.n, a.k, a.trials, seed, method, a.torus,
                                  a.midpoint, a.threads, a.mem_budget);
    Sink sink;
    sink.open(a.out);
    std::ostringstream echo;
    if (a.format == "csv")
        echo << "d=" << a.d << " eps=" << fmt17(a.eps) << " n=" << a.n << " k=" << a.k
             << " trials=" << a.trials << " seed=" << seed << " method=" << a.method
             << " torus=" << (a.torus ? 1 : 0) << " midpoint=" << (a.midpoint ? 1 : 0);
    else
        echo << "\"d\":" << a.d << ",\"eps\":" << fmt17(a.eps) << ",\"n\":" << a.n
             << ",\"k\":" << a.k << ",\"trials\":" << a.trials << ",\"seed\":" << seed
             << ",\"method\":" << q(a.method) << ",\"torus\":"
             << (a.torus ? "true" : "false") << ",\"midpoint\":"
             << (a.midpoint ? "true" : "false");
    write_experiment(sink.s(), "mc-disp", echo.str(), a.format, rep, a.n,
                     method == DispMethod::exact);
}

struct McInvertArgs : McCommonArgs {
    double target = 0.5;
    int n_cap = 4096;
};

void run_mc_invert(const McInvertArgs& a) {
    check_format(a.format);
    std::uint64_t seed = resolve_seed(a.seed_given, a.seed);
    InverseResult inv = empirical_inverse(a.d, a.eps, a.k, a.target, a.trials, seed,
                                          a.threads, a.n_cap);
    Sink sink;
    sink.open(a.out);
    std::ostream& os = sink.s();
    if (a.format == "csv") {
        os << "# dispkit-output v1\n";
        os << "# command=mc-invert d=" << a.d << " eps=" << fmt17(a.eps) << " k=" << a.k
           << " target=" << fmt17(a.target) << " trials=" << a.trials << " seed=" << seed
           << " n_cap=" << a.n_cap << "\n";
        os << "n,fraction\n";
        for (const auto& [n, f] : inv.trace) os << n << "," << fmt17(f) << "\n";
        os << "# summary\n";
        os << "result_n,fraction\n";
        os << inv.n << "," << fmt17(inv.fraction) << "\n";
    } else {
        os << "{\"format\":\"dispkit-output\",\"version\":1,\"command\":\"mc-invert\""
           << ",\"d\":" << a.d << ",\"eps\":" << fmt17(a.eps) << ",\"k\":" << a.k
           << ",\"target\":" << fmt17(a.target) << ",\"trials\":" << a.trials
           << ",\"seed\":" << seed << ",\"n_cap\":" << a.n_cap << "}\n";
        for (const auto& [n, f] : inv.trace)
            os << "{\"n\":" << n << ",\"fraction\":" << fmt17(f) << "}\n";
        os << "{\"summary\":{\"result_n\":" << inv.n << ",\"fraction\":"
           << fmt17(inv.fraction) << "}}\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dispersion toolkit: exact dispersion, box nets, bound formulas, "
                 "seeded experiments"};
    app.require_subcommand(1);

    DispArgs disp_args;
    CLI::App* disp = app.add_subcommand("disp", "exact (k-)dispersion of a point set");
    disp->add_option("--points", disp_args.points, "point set file")->required();
    disp->add_option("--k", disp_args.k, "points a box may contain");
    disp->add_flag("--torus", disp_args.torus, "periodic boxes");
    disp->add_option("--out", disp_args.out, "write output here instead of stdout");

    CLI::App* net = app.add_subcommand("net", "build, verify, or apply box nets");
    net->require_subcommand(1);

    NetBuildArgs nb;
    CLI::App* net_build = net->add_subcommand("build", "construct a net and save it");
    net_build->add_option("--d", nb.d, "dimension")->required();
    net_build->add_option("--eps", nb.eps, "target volume")->required();
    net_build->add_option("--gamma", nb.gamma, "oversampling exponent (default 1/ln(1/eps))");
    net_build->add_option("--kind", nb.kind, "anchored | general | torus");
    net_build->add_flag("--torus", nb.torus, "shorthand for --kind torus");
    net_build->add_option("--out", nb.out, "net file to write")->required();
    net_build->add_option("--mem-budget", nb.mem_budget, "memory budget in bytes");

    NetVerifyArgs nv;
    CLI::App* net_verify = net->add_subcommand("verify", "random containment audit");
    net_verify->add_option("--net", nv.net, "net file")->required();
    net_verify->add_option("--trials", nv.trials, "number of random boxes");
    CLI::Option* nv_seed = net_verify->add_option("--seed", nv.seed, "RNG seed");
    net_verify->add_option("--out", nv.out, "write output here instead of stdout");

    NetCertifyArgs nc;
    CLI::App* net_certify = net->add_subcommand("certify", "check a set hits every element");
    net_certify->add_option("--net", nc.net, "net file")->required();
    net_certify->add_option("--points", nc.points, "point set file")->required();
    net_certify->add_option("--k", nc.k, "required occupancy minus one");
    net_certify->add_option("--out", nc.out, "write output here instead of stdout");

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate bound formulas");
    bounds->require_subcommand(1);

    BoundsEvalArgs be;
    CLI::App* bounds_eval = bounds->add_subcommand("eval", "tabulate formulas on grids");
    bounds_eval->add_option("--formula", be.formulas, "comma-separated formula ids")
        ->required();
    bounds_eval->add_option("--eps", be.eps_grid, "eps grid (delta for lemmas)");
    bounds_eval->add_option("--d", be.d_grid, "d grid (net size for lemmas, m for covers)");
    bounds_eval->add_option("--k", be.k, "k for the k-dispersion formulas");
    bounds_eval->add_option("--gamma", be.gamma, "gamma for rz_cover");
    bounds_eval->add_option("--out", be.out, "write output here instead of stdout");

    BoundsRegimesArgs br;
    CLI::App* bounds_regimes =
        bounds->add_subcommand("regimes", "best-known piecewise bound across regimes");
    bounds_regimes->add_option("--eps", br.eps_grid, "eps grid");
    bounds_regimes->add_option("--d", br.d_grid, "d grid");
    bounds_regimes->add_option("--out", br.out, "write output here instead of stdout");

    CLI::App* mc = app.add_subcommand("mc", "seeded Monte Carlo experiments");
    mc->require_subcommand(1);

    McNetArgs mn;
    CLI::App* mc_net = mc->add_subcommand("net", "net certification success rate");
    mc_net->add_option("--d", mn.d, "dimension")->required();
    mc_net->add_option("--eps", mn.eps, "target volume")->required();
    mc_net->add_option("--gamma", mn.gamma, "oversampling exponent");
    mc_net->add_option("--kind", mn.kind, "anchored | general | torus");
    mc_net->add_flag("--torus", mn.torus, "shorthand for --kind torus");
    mc_net->add_option("--k", mn.k, "points a box may miss");
    mc_net->add_option("--n", mn.n, "points per trial")->required();
    mc_net->add_option("--trials", mn.trials, "number of trials");
    CLI::Option* mn_seed = mc_net->add_option("--seed", mn.seed, "RNG seed");
    mc_net->add_option("--threads", mn.threads, "worker threads");
    mc_net->add_option("--mem-budget", mn.mem_budget, "memory budget in bytes");
    mc_net->add_option("--out", mn.out, "write output here instead of stdout");
    mc_net->add_option("--format", mn.format, "csv | jsonl");

    McDispArgs md;
    CLI::App* mc_disp = mc->add_subcommand("disp", "dispersion target success rate");
    mc_disp->add_option("--d", md.d, "dimension")->required();
    mc_disp->add_option("--eps", md.eps, "target volume")->required();
    mc_disp->add_option("--n", md.n, "points per trial")->required();
    mc_disp->add_option("--k", md.k, "points a box may contain");
    mc_disp->add_option("--trials", md.trials, "number of trials");
    CLI::Option* md_seed = mc_disp->add_option("--seed", md.seed, "RNG seed");
    mc_disp->add_option("--method", md.method, "exact | net_certify");
    mc_disp->add_flag("--torus", md.torus, "periodic boxes");
    mc_disp->add_flag("--midpoint", md.midpoint, "use the cube center instead of sampling");
    mc_disp->add_option("--threads", md.threads, "worker threads");
    mc_disp->add_option("--mem-budget", md.mem_budget, "memory budget in bytes");
    mc_disp->add_option("--out", md.out, "write output here instead of stdout");
    mc_disp->add_option("--format", md.format, "csv | jsonl");

    McInvertArgs mi;
    CLI::App* mc_invert =
        mc->add_subcommand("invert", "smallest n reaching a target success fraction");
    mc_invert->add_option("--d", mi.d, "dimension")->required();
    mc_invert->add_option("--eps", mi.eps, "target volume")->required();
    mc_invert->add_option("--k", mi.k, "points a box may contain");
    mc_invert->add_option("--target", mi.target, "target success fraction")->required();
    mc_invert->add_option("--trials", mi.trials, "trials per candidate n");
    CLI::Option* mi_seed = mc_invert->add_option("--seed", mi.seed, "RNG seed");
    mc_invert->add_option("--threads", mi.threads, "worker threads");
    mc_invert->add_option("--n-cap", mi.n_cap, "largest n to try");
    mc_invert->add_option("--out", mi.out, "write output here instead of stdout");
    mc_invert->add_option("--format", mi.format, "csv | jsonl");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        nv.seed_given = nv_seed->count() > 0;
        mn.seed_given = mn_seed->count() > 0;
        md.seed_given = md_seed->count() > 0;
        mi.seed_given = mi_seed->count() > 0;
        if (disp->parsed()) run_disp(disp_args);
        if (net_build->parsed()) run_net_build(nb);
        if (net_verify->parsed()) run_net_verify(nv);
        if (net_certify->parsed()) run_net_certify(nc);
        if (bounds_eval->parsed()) run_bounds_eval(be);
        if (bounds_regimes->parsed()) run_bounds_regimes(br);
        if (mc_net->parsed()) run_mc_net(mn);
        if (mc_disp->parsed()) run_mc_disp(md);
        if (mc_invert->parsed()) run_mc_invert(mi);
        return 0;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
