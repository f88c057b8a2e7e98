#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dispkit/errors.hpp"

namespace dispkit {

// Tolerance used only where derived arithmetic (powers of eps, lattice
// steps) meets geometry. Point membership tests never use it.
inline constexpr double kGeomTol = 1e-12;

// Finite ordered list of points in [0,1]^d, row-major storage.
struct PointSet {
    int d = 0;
    std::vector<double> coords;  // size() == n * d

    PointSet() = default;
    explicit PointSet(int dim) : d(dim) {}

    std::size_t size() const { return d > 0 ? coords.size() / d : 0; }
    double at(std::size_t j, int i) const { return coords[j * d + i]; }
    const double* row(std::size_t j) const { return coords.data() + j * d; }

    void append(const double* p) { coords.insert(coords.end(), p, p + d); }

    // Checks d >= 1, every coordinate in [0,1], row alignment.
    void validate() const;
};

// Half-open axis-parallel box: coordinate i covers [anchor_i, anchor_i+sides_i),
// or (anchor_i, anchor_i+sides_i) when open_left[i] is set. Open-left faces
// represent supremum witnesses whose face sits on a point coordinate.
//
// Membership is evaluated as (p_i - anchor_i) < sides_i, i.e. subtract first.
// Faces built from point coordinates then compare exactly: a point lying on
// the right face yields p_i - anchor_i == sides_i and is excluded without any
// rounding slack.
struct AxisBox {
    std::vector<double> anchor;
    std::vector<double> sides;
    std::vector<std::uint8_t> open_left;  // empty means all-closed

    AxisBox() = default;
    AxisBox(std::vector<double> a, std::vector<double> s);
    AxisBox(std::vector<double> a, std::vector<double> s, std::vector<std::uint8_t> ol);

    int dim() const { return static_cast<int>(anchor.size()); }
    bool left_open(int i) const { return !open_left.empty() && open_left[i] != 0; }

    // Checks 0 <= anchor, sides >= 0, anchor+sides <= 1+kGeomTol, and that
    // open_left is unset wherever anchor_i == 0.
    void validate() const;
};

// Axis-parallel box on the torus [0,1)^d. Coordinate i covers the circular
// arc of length sides_i starting at anchor_i, half-open by default and open
// at the anchor when open_left[i] is set. sides_i == 1 with open_left[i]
// gives the full circle minus the single coordinate anchor_i.
struct PeriodicBox {
    std::vector<double> anchor;  // each in [0,1)
    std::vector<double> sides;   // each in [0,1]
    std::vector<std::uint8_t> open_left;

    PeriodicBox() = default;
    PeriodicBox(std::vector<double> a, std::vector<double> s);
    PeriodicBox(std::vector<double> a, std::vector<double> s, std::vector<std::uint8_t> ol);

    int dim() const { return static_cast<int>(anchor.size()); }
    bool left_open(int i) const { return !open_left.empty() && open_left[i] != 0; }

    void validate() const;
};

// x mod 1 mapped into [0,1).
inline double wrap01(double x) {
    double t = x;
    if (t < 0.0) t += 1.0;
    if (t >= 1.0) t -= 1.0;
    return t;
}

double box_volume(const AxisBox& b);
double box_volume(const PeriodicBox& b);

bool box_contains(const AxisBox& b, const double* p, int d);
bool box_contains(const PeriodicBox& b, const double* p, int d);

// Count of points of P inside the box (reference path; the kernels module
// provides the tuned equivalent).
std::size_t count_contained(const AxisBox& b, const PointSet& P);
std::size_t count_contained(const PeriodicBox& b, const PointSet& P);

}  // namespace dispkit
