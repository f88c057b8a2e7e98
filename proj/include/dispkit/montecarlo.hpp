#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dispkit/geometry.hpp"
#include "dispkit/nets.hpp"

namespace dispkit {

inline constexpr std::uint64_t kDefaultMemBudget = std::uint64_t{2} << 30;

// n i.i.d. uniform points in [0,1)^d. Point i, axis j draws from the counter
// (seed, stream, i, j), so the set is a pure function of its arguments and
// the n-point set is a prefix of every longer set on the same stream. That
// prefix property is what makes empirical_inverse monotone per trial.
PointSet sample_uniform(int n, int d, std::uint64_t seed, std::uint64_t stream);

struct TrialRecord {
    std::uint64_t trial = 0;
    int n = 0;
    bool success = false;
    std::uint64_t deficient_boxes = 0;  // net-certify trials
    double dispersion_value = -1.0;     // exact-method trials, else -1
};

struct ExperimentReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double fraction = 0.0;
    std::uint64_t net_size = 0;     // when a net was built
    double prob_floor = 0.0;        // 1 - 1/|N| when the union-bound lemma applies
    bool floor_applies = false;     // n >= ceil(lemma sample bound)
    std::vector<TrialRecord> records;
};

// Builds the shifted net for (p, kind), then over `trials` independent point
// sets of size n checks whether every net element captures at least k+1
// points. Success certifies k-dispersion < eps for that set. Workers only
// change scheduling, never results. Refuses (resource_error) when the
// predicted net footprint exceeds mem_budget bytes.
ExperimentReport run_net_experiment(const NetParams& p, NetKind kind, int k, int n,
                                    std::uint64_t trials, std::uint64_t seed,
                                    int threads = 1,
                                    std::uint64_t mem_budget = kDefaultMemBudget);

enum class DispMethod { exact, net_certify };

DispMethod disp_method_from_name(const std::string& name);

// Per-trial success means k-dispersion(P) <= eps, decided either by the
// exact solver or by net certification (which is one-sided: a certified set
// always truly satisfies the target, an uncertified one may still satisfy
// it). midpoint replaces the sampled set by the cube center and requires
// n == 1.
ExperimentReport run_dispersion_experiment(int d, double eps, int n, int k,
                                           std::uint64_t trials, std::uint64_t seed,
                                           DispMethod method, bool torus = false,
                                           bool midpoint = false, int threads = 1,
                                           std::uint64_t mem_budget = kDefaultMemBudget);

struct InverseResult {
    int n = 0;           // smallest n with fraction >= target
    double fraction = 0.0;
    std::vector<std::pair<int, double>> trace;  // (n, fraction) in probe order
};

// Smallest n whose empirical success fraction (k-dispersion <= eps over
// trials_per_n sets) reaches target. Nested prefix sampling couples the
// trials across n, making each trial's success monotone in n; the doubling
// probe followed by binary search is exact under that coupling. Gives up
// (resource_error) once n would exceed n_cap.
InverseResult empirical_inverse(int d, double eps, int k, double target,
                                std::uint64_t trials_per_n, std::uint64_t seed,
                                int threads = 1, int n_cap = 4096);

}  // namespace dispkit
