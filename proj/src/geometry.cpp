#include "dispkit/geometry.hpp"

#include <cmath>
#include <string>

namespace dispkit {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw input_error(msg);
}

}  // namespace

void PointSet::validate() const {
    require(d >= 1, "point set dimension must be >= 1");
    require(coords.size() % static_cast<std::size_t>(d) == 0,
            "coordinate buffer is not a multiple of the dimension");
    for (double c : coords) {
        require(std::isfinite(c) && c >= 0.0 && c <= 1.0,
                "point coordinate outside [0,1]");
    }
}

AxisBox::AxisBox(std::vector<double> a, std::vector<double> s)
    : anchor(std::move(a)), sides(std::move(s)) {}

AxisBox::AxisBox(std::vector<double> a, std::vector<double> s, std::vector<std::uint8_t> ol)
    : anchor(std::move(a)), sides(std::move(s)), open_left(std::move(ol)) {}

void AxisBox::validate() const {
    require(!anchor.empty(), "box dimension must be >= 1");
    require(anchor.size() == sides.size(), "anchor/sides size mismatch");
    require(open_left.empty() || open_left.size() == anchor.size(),
            "open_left size mismatch");
    for (std::size_t i = 0; i < anchor.size(); ++i) {
        require(std::isfinite(anchor[i]) && anchor[i] >= 0.0, "box anchor below 0");
        require(std::isfinite(sides[i]) && sides[i] >= 0.0, "box side below 0");
        require(anchor[i] + sides[i] <= 1.0 + kGeomTol, "box leaves the unit cube");
        if (anchor[i] == 0.0) {
            require(open_left.empty() || open_left[i] == 0,
                    "open_left set on a face at the cube wall");
        }
    }
}

PeriodicBox::PeriodicBox(std::vector<double> a, std::vector<double> s)
    : anchor(std::move(a)), sides(std::move(s)) {}

PeriodicBox::PeriodicBox(std::vector<double> a, std::vector<double> s, std::vector<std::uint8_t> ol)
    : anchor(std::move(a)), sides(std::move(s)), open_left(std::move(ol)) {}

void PeriodicBox::validate() const {
    require(!anchor.empty(), "box dimension must be >= 1");
    require(anchor.size() == sides.size(), "anchor/sides size mismatch");
    require(open_left.empty() || open_left.size() == anchor.size(),
            "open_left size mismatch");
    for (std::size_t i = 0; i < anchor.size(); ++i) {
        require(std::isfinite(anchor[i]) && anchor[i] >= 0.0 && anchor[i] < 1.0,
                "periodic anchor outside [0,1)");
        require(std::isfinite(sides[i]) && sides[i] >= 0.0 && sides[i] <= 1.0,
                "periodic side outside [0,1]");
    }
}

double box_volume(const AxisBox& b) {
    double v = 1.0;
    for (double s : b.sides) v *= s;
    return v;
}

double box_volume(const PeriodicBox& b) {
    double v = 1.0;
    for (double s : b.sides) v *= s;
    return v;
}

bool box_contains(const AxisBox& b, const double* p, int d) {
    if (d != b.dim()) throw input_error("box/point dimension mismatch");
    for (int i = 0; i < d; ++i) {
        if (b.left_open(i)) {
            if (!(p[i] > b.anchor[i])) return false;
        } else {
            if (!(p[i] >= b.anchor[i])) return false;
        }
        if (!(p[i] - b.anchor[i] < b.sides[i])) return false;
    }
    return true;
}

bool box_contains(const PeriodicBox& b, const double* p, int d) {
    if (d != b.dim()) throw input_error("box/point dimension mismatch");
    for (int i = 0; i < d; ++i) {
        double t = wrap01(p[i] - b.anchor[i]);
        if (b.left_open(i)) {
            if (!(t > 0.0)) return false;
        }
        if (!(t < b.sides[i])) return false;
    }
    return true;
}

std::size_t count_contained(const AxisBox& b, const PointSet& P) {
    if (P.d != b.dim()) throw input_error("box/point-set dimension mismatch");
    std::size_t c = 0;
    for (std::size_t j = 0; j < P.size(); ++j) {
        if (box_contains(b, P.row(j), P.d)) ++c;
    }
    return c;
}

std::size_t count_contained(const PeriodicBox& b, const PointSet& P) {
    if (P.d != b.dim()) throw input_error("box/point-set dimension mismatch");
    std::size_t c = 0;
    for (std::size_t j = 0; j < P.size(); ++j) {
        if (box_contains(b, P.row(j), P.d)) ++c;
    }
    return c;
}

}  // namespace dispkit
