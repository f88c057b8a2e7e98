#pragma once

#include <string>

#include "dispkit/nets.hpp"

namespace dispkit {

// One evaluated bound formula. value is the raw formula value (clamped at 0,
// see best_known_upper); integer_value = ceil(value), meaningful when the
// quantity is a point count. valid reports whether the parameters lie in the
// regime the formula was stated for; out-of-regime inputs are still
// evaluated, never rejected, unless the arithmetic itself breaks down.
// constant_unspecified marks formulas whose absolute constant is not pinned
// down; those are evaluated with the constant set to 1.
struct BoundValue {
    std::string formula_id;
    double value = 0.0;
    double integer_value = 0.0;
    bool valid = true;
    bool constant_unspecified = false;
    int regime = 0;         // best_known_piecewise: 1..4, else 0
    double prob_floor = 0;  // lemma_unb / lemma_k_unb: 1 - 1/|N|
    double cap = 0;         // theta_m: the closed-form ceiling m(ln m + lnln m + 5)
};

// n(eps, d) <= 12e (4 d lnln(8/eps) + ln(1/eps)) / eps, stated for d >= 2,
// eps in (0, 1/2].
BoundValue thm_main_bound(double eps, int d);

// Torus variant: 24e (2d ln(2d) + ln(e/eps)) / eps.
BoundValue thm_torus_bound(double eps, int d);

// k-dispersion variant: 80e (d lnln(8/eps) + k ln(e/eps)) / eps.
BoundValue thm_k_bound(double eps, int d, int k);

// Union-bound lemma: n <= 3 ln|N| / delta points hit every box of a net of
// size |N| with probability >= 1 - 1/|N| (the prob_floor field).
BoundValue lemma_unb_bound(double net_size, double delta);

// k-point variant: (5/delta)(ln|N| + k ln(e/delta)), same floor.
BoundValue lemma_k_unb_bound(double net_size, double delta, int k);

// Covering-number bound N(K, -gamma K) <= 7 m ln m ((1+gamma)/gamma)^m.
BoundValue rz_cover_bound(int m, double gamma);

// Covering density theta_m: inf over x in (0, 1/m) of (1+x)^m (1 - m ln x),
// computed by golden-section minimization; cap holds m(ln m + lnln m + 5).
BoundValue theta_m_bound(int m);

enum class LowerVariant { ahr, bc, ullrich, trivial, hkkr_random };

LowerVariant lower_variant_from_name(const std::string& name);

// Lower bounds on the inverse of minimal dispersion:
//   ahr      log2(d) / (8 eps),  stated for eps in (0, 1/4)
//   bc       d / (e eps),        stated for eps <= (4d)^-d (checked in logs)
//   ullrich  d / eps             (torus)
//   trivial  1/eps - 1           (from disp*(n,d) >= 1/(n+1))
//   hkkr_random  max{(c/eps) ln(1/eps), d/(2 eps)}, c unspecified, set to 1
BoundValue lower_bound(double eps, int d, LowerVariant variant);

// Large-eps upper bounds, defined for eps > 1/4 only:
// Sosnovec 1 + (eps - 1/4)^-1 and MacKay pi/sqrt(eps - 1/4) - 3.
BoundValue sosnovec_bound(double eps);
BoundValue mackay_bound(double eps);

// The applicable minimum of the two above; exactly 1 for eps >= 1/2.
BoundValue large_eps_bound(double eps);

// Piecewise best-known upper bound on n(eps, d) with all four unspecified
// constants set to 1 (flagged). Regime thresholds, checked in log space:
//   1: eps >= ln^2(d) / (d lnln(2d))      ->  ln(d) ln(1/eps) / eps^2
//   2: eps >= d^-d                        ->  d lnln(1/eps) / eps
//   3: eps >= d^-d^2                      ->  ln(1/eps) / eps
//   4: otherwise                          ->  d^2 ln(d) / eps
// Near eps = 1/2 regime 2's raw value can go negative (the asymptotic form
// is meaningless there); it is clamped to 0 and flagged invalid.
BoundValue best_known_upper(double eps, int d);

}  // namespace dispkit
