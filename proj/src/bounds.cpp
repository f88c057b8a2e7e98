#include "dispkit/bounds.hpp"

#include <cmath>

#include "dispkit/errors.hpp"

namespace dispkit {
namespace {

constexpr double kE = 2.718281828459045235360287471352662498;
constexpr double kPi = 3.141592653589793238462643383279502884;

void require_eps01(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw input_error("eps must lie in (0,1)");
}

BoundValue make(const char* id, double value, bool valid) {
    BoundValue b;
    b.formula_id = id;
    b.value = value;
    b.integer_value = std::ceil(value);
    b.valid = valid;
    return b;
}

}  // namespace

BoundValue thm_main_bound(double eps, int d) {
    require_eps01(eps);
    if (d < 1) throw input_error("d must be >= 1");
    double v = 12.0 * kE * (4.0 * d * std::log(std::log(8.0 / eps)) + std::log(1.0 / eps)) / eps;
    return make("thm_main", v, d >= 2 && eps <= 0.5);
}

BoundValue thm_torus_bound(double eps, int d) {
    require_eps01(eps);
    if (d < 1) throw input_error("d must be >= 1");
    double v = 24.0 * kE * (2.0 * d * std::log(2.0 * d) + std::log(kE / eps)) / eps;
    return make("thm_torus", v, d >= 2 && eps <= 0.5);
}

BoundValue thm_k_bound(double eps, int d, int k) {
    require_eps01(eps);
    if (d < 1) throw input_error("d must be >= 1");
    if (k < 0) throw input_error("k must be nonnegative");
    double v = 80.0 * kE * (d * std::log(std::log(8.0 / eps)) + k * std::log(kE / eps)) / eps;
    return make("thm_k", v, d >= 2 && eps <= 0.5);
}

BoundValue lemma_unb_bound(double net_size, double delta) {
    if (!(net_size >= 3.0)) throw input_error("net size must be >= 3");
    if (!(delta > 0.0) || !(delta < 1.0)) throw input_error("delta must lie in (0,1)");
    BoundValue b = make("lemma_unb", 3.0 * std::log(net_size) / delta, true);
    b.prob_floor = 1.0 - 1.0 / net_size;
    return b;
}

BoundValue lemma_k_unb_bound(double net_size, double delta, int k) {
    if (!(net_size >= 3.0)) throw input_error("net size must be >= 3");
    if (!(delta > 0.0) || !(delta < 1.0)) throw input_error("delta must lie in (0,1)");
    if (k < 0) throw input_error("k must be nonnegative");
    double v = (5.0 / delta) * (std::log(net_size) + k * std::log(kE / delta));
    BoundValue b = make("lemma_k_unb", v, true);
    b.prob_floor = 1.0 - 1.0 / net_size;
    return b;
}

BoundValue rz_cover_bound(int m, double gamma) {
    if (m < 2) throw input_error("m must be >= 2");
    if (!(gamma > 0.0)) throw input_error("gamma must be positive");
    double v = 7.0 * m * std::log(static_cast<double>(m)) * std::pow((1.0 + gamma) / gamma, m);
    return make("rz_cover", v, true);
}

BoundValue theta_m_bound(int m) {
    if (m < 3) throw input_error("m must be >= 3 for the covering density infimum");
    auto g = [m](double x) { return std::pow(1.0 + x, m) * (1.0 - m * std::log(x)); };
    // g decreases from +inf near 0 to a single interior minimum, then rises;
    // golden-section search converges on any unimodal bracket.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1e-30, b = 1.0 / m;
    double c = b - gr * (b - a);
    double e = a + gr * (b - a);
    double fc = g(c), fe = g(e);
    for (int it = 0; it < 400; ++it) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - gr * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + gr * (b - a);
            fe = g(e);
        }
    }
    BoundValue r = make("theta_m", g((a + b) / 2.0), true);
    double lm = std::log(static_cast<double>(m));
    r.cap = m * (lm + std::log(lm) + 5.0);
    return r;
}

LowerVariant lower_variant_from_name(const std::string& name) {
    if (name == "ahr") return LowerVariant::ahr;
    if (name == "bc") return LowerVariant::bc;
    if (name == "ullrich") return LowerVariant::ullrich;
    if (name == "trivial") return LowerVariant::trivial;
    if (name == "hkkr_random") return LowerVariant::hkkr_random;
    throw input_error("unknown lower-bound variant '" + name + "'");
}

BoundValue lower_bound(double eps, int d, LowerVariant variant) {
    require_eps01(eps);
    if (d < 1) throw input_error("d must be >= 1");
    switch (variant) {
        case LowerVariant::ahr:
            return make("lower_ahr", std::log2(static_cast<double>(d)) / (8.0 * eps),
                        d >= 2 && eps < 0.25);
        case LowerVariant::bc:
            // regime eps <= (4d)^-d, compared in logs to dodge underflow
            return make("lower_bc", d / (kE * eps),
                        std::log(eps) <= -d * std::log(4.0 * d) + 1e-12);
        case LowerVariant::ullrich:
            return make("lower_ullrich", d / eps, true);
        case LowerVariant::trivial:
            return make("lower_trivial", 1.0 / eps - 1.0, true);
        case LowerVariant::hkkr_random: {
            double v = std::max(std::log(1.0 / eps) / eps, d / (2.0 * eps));
            BoundValue b = make("lower_hkkr_random", v, true);
            b.constant_unspecified = true;
            return b;
        }
    }
    throw input_error("unknown lower-bound variant");
}

BoundValue sosnovec_bound(double eps) {
    if (!(eps > 0.25)) throw input_error("Sosnovec bound requires eps > 1/4");
    return make("sosnovec_large_eps", 1.0 + 1.0 / (eps - 0.25), true);
}

BoundValue mackay_bound(double eps) {
    if (!(eps > 0.25)) throw input_error("MacKay bound requires eps > 1/4");
    return make("mackay_large_eps", kPi / std::sqrt(eps - 0.25) - 3.0, eps < 0.5);
}

BoundValue large_eps_bound(double eps) {
    if (!(eps > 0.25)) throw input_error("large-eps bounds require eps > 1/4");
    if (eps >= 0.5) return make("large_eps", 1.0, true);
    double v = std::min(sosnovec_bound(eps).value, mackay_bound(eps).value);
    return make("large_eps", v, true);
}

BoundValue best_known_upper(double eps, int d) {
    require_eps01(eps);
    if (d < 2) throw input_error("best_known_upper requires d >= 2");
    const double ld = std::log(static_cast<double>(d));
    const double leps = std::log(eps);
    const double t1 = ld * ld / (d * std::log(std::log(2.0 * d)));
    BoundValue b;
    b.formula_id = "best_known_piecewise";
    b.constant_unspecified = true;
    b.valid = eps <= 0.5;
    if (eps >= t1) {
        b.regime = 1;
        b.value = ld * std::log(1.0 / eps) / (eps * eps);
    } else if (leps >= -d * ld) {
        b.regime = 2;
        b.value = d * std::log(std::log(1.0 / eps)) / eps;
    } else if (leps >= -static_cast<double>(d) * d * ld) {
        b.regime = 3;
        b.value = std::log(1.0 / eps) / eps;
    } else {
        b.regime = 4;
        b.value = static_cast<double>(d) * d * ld / eps;
    }
    if (b.value < 0.0) {
        // the asymptotic form is vacuous here (possible only near eps = 1/2
        // in regime 2); keep the value >= 0 contract and flag it
        b.value = 0.0;
        b.valid = false;
    }
    b.integer_value = std::ceil(b.value);
    return b;
}

}  // namespace dispkit
