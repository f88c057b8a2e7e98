#pragma once

#include <cstdint>
#include <variant>

#include "dispkit/geometry.hpp"

namespace dispkit {

// Result of an exact (k-)dispersion computation.
//
// value is the supremum of box volumes over boxes containing at most k
// points. witness is the box realizing it; when the supremum is reached
// only as a limit (a face pressed against a point coordinate from outside;
// on the torus every arc anchored at a coordinate is of this kind), the
// witness carries the corresponding open_left flags and attained is false.
// attained always describes the returned witness. Equal-volume witnesses are ordered by
// (anchor, sides, open_left) lexicographically and the smallest is returned,
// which keeps outputs byte-stable.
struct DispersionResult {
    double value = 0.0;
    std::variant<AxisBox, PeriodicBox> witness;
    bool attained = true;
    std::uint64_t boxes_examined = 0;

    const AxisBox& box() const { return std::get<AxisBox>(witness); }
    const PeriodicBox& periodic_box() const { return std::get<PeriodicBox>(witness); }
};

// Largest empty-box volume over half-open axis-parallel boxes in [0,1]^d.
DispersionResult dispersion_exact(const PointSet& P);

// Largest volume over boxes containing at most k points. k >= n gives 1.
DispersionResult k_dispersion_exact(const PointSet& P, int k);

// Torus variant: boxes are products of circular arcs (wrap-around allowed).
DispersionResult torus_dispersion_exact(const PointSet& P);

// Torus variant allowing up to k points inside.
DispersionResult torus_k_dispersion_exact(const PointSet& P, int k);

// Plain full enumeration over all candidate boxes, no pruning, no shortcuts.
// Deliberately kept independent of the branch-and-bound path so the two can
// be cross-checked; limited to d <= 3, n <= 12.
DispersionResult brute_force_oracle(const PointSet& P, int k, bool periodic);

// Pessimistic candidate-box count for the search, used for size refusals.
double enumeration_cost_estimate(const PointSet& P, bool periodic);

// Work ceiling callers compare the estimate against before solving.
inline constexpr double kEnumWorkBudget = 2e9;

}  // namespace dispkit
