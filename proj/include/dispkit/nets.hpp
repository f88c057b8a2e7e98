#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dispkit/geometry.hpp"

namespace dispkit {

// Parameter bundle governing net construction. delta0 = eps^(1+gamma) is the
// volume floor of the anchored family; shifted nets lose another factor
// c_d^d >= 1/4 (d >= 2), hence delta = delta0 / 4.
struct NetParams {
    int d = 0;
    double eps = 0.0;
    double gamma = 0.0;
    double delta0 = 0.0;
    double delta = 0.0;
    double c_d = 0.0;

    // gamma <= 0 requests the default 1/ln(1/eps), which makes
    // eps^(1+gamma) = eps/e.
    static NetParams make(int d, double eps, double gamma = 0.0);
};

enum class NetKind { anchored, general, torus };

const char* net_kind_name(NetKind kind);
NetKind net_kind_from_name(const std::string& name);

// One box of a net. Anchored elements sit at the origin with sides eps^y for
// a cover exponent y (source indexes the cover). General and torus elements
// record the lattice index vector k that produced their shift; their sides
// are exactly c_d times the source box's sides.
struct NetElement {
    std::vector<double> anchor;
    std::vector<double> sides;
    bool periodic = false;
    std::int32_t source = -1;
    std::vector<std::int32_t> shift;

    double volume() const;
};

struct Net {
    NetParams params;
    NetKind kind = NetKind::anchored;
    std::vector<NetElement> elements;
};

// Covering of the exponent simplex {x >= 0, sum x = 1} by grid points: every
// y = (gamma/d) * k with k in Z>=0^d and sum k small enough that sum y stays
// <= 1 + gamma. Ceiling-rounding any simplex point lands on a member that
// dominates it coordinatewise.
struct SimplexCover {
    int d = 0;
    double gamma = 0.0;
    double step = 0.0;
    std::vector<std::vector<double>> points;
};

SimplexCover build_simplex_cover(int d, double gamma);

// Rounds a simplex point up to its covering grid member; returns the index
// into cover.points. Throws if the rounded point is not a member (cannot
// happen for sum x <= 1 within tolerance).
int round_to_cover(const SimplexCover& cover, const std::vector<double>& x);

Net build_anchored_net(const NetParams& p);

// All lattice shifts z with z_i = k_i b_i / d for integer k_i in
// [1, floor(1 - d + d/b_i)] (cube) or [1, floor(1 + d/b_i)] (torus, taken
// mod 1). A +1e-12 guard precedes each floor so b_i = d/(d-1+m) yields m.
std::vector<std::vector<double>> shift_lattice(const std::vector<double>& sides,
                                               const NetParams& p, bool periodic);

// Per-axis shift counts without materializing the vectors.
std::vector<std::int64_t> shift_lattice_shape(const std::vector<double>& sides,
                                              const NetParams& p, bool periodic);

Net build_general_net(const NetParams& p);
Net build_torus_net(const NetParams& p);

// Predicted element count of build_*_net without building it, exact for all
// three kinds. Used for memory refusals before allocation.
double estimate_net_cardinality(const NetParams& p, NetKind kind);

// The paper-style cardinality ceiling 7 d ln d (1+1/gamma)^d Q with
// Q = (ln(e/delta0))^d / delta0 for cube nets and (2d)^d / delta0 for torus
// nets; the constructed size may exceed it (the covering here is a grid, not
// an optimal one), so callers report the ratio instead of asserting it.
double paper_cardinality_bound(const NetParams& p, NetKind kind);

struct VerifyReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t fast_path_hits = 0;
    bool has_witness = false;
    std::vector<double> witness_anchor;
    std::vector<double> witness_sides;
};

// Samples `trials` random boxes of volume exactly eps (anchored, cube, or
// torus per net kind) and checks each contains a net element of volume
// >= delta (>= delta0 for anchored nets). Deterministic given seed.
VerifyReport verify_approximation(const Net& net, std::uint64_t trials, std::uint64_t seed);

// Looks up a net element contained in the box (anchor, sides); returns its
// index or -1. Boxes of volume > eps are first shrunk about the anchor to
// volume exactly eps (sides only shrink, so containment is preserved).
int find_containing_element(const Net& net, const std::vector<double>& anchor,
                            const std::vector<double>& sides);

struct CertifyReport {
    bool certified = false;
    int k = 0;
    std::uint64_t elements = 0;
    std::vector<std::uint64_t> deficient;  // indices of elements with <= k points
};

// Checks that every net element contains at least k+1 points of P; when it
// does, k-dispersion(P) < eps is certified.
CertifyReport net_certifies(const Net& net, const PointSet& P, int k);

}  // namespace dispkit
