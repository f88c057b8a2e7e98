#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "dispkit/errors.hpp"
#include "dispkit/geometry.hpp"
#include "dispkit/io.hpp"
#include "dispkit/nets.hpp"
#include "dispkit/rng.hpp"

using namespace dispkit;

namespace {

PointSet center_grid(int per_axis) {
    PointSet P(2);
    for (int i = 0; i < per_axis; ++i) {
        for (int j = 0; j < per_axis; ++j) {
            double row[2] = {(i + 0.5) / per_axis, (j + 0.5) / per_axis};
            P.append(row);
        }
    }
    return P;
}

// The box verify_approximation samples in its given trial, reproduced step
// for step so tests can predict the sampled witness exactly.
void replay_trial(const NetParams& p, std::uint64_t seed, std::uint64_t trial, bool torus,
                  std::vector<double>& w, std::vector<double>& a) {
    const int d = p.d;
    Philox rng(seed);
    std::vector<double> expo(d);
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
        double u = rng.uniform(trial, 0, static_cast<std::uint32_t>(i), kDrawSimplex);
        expo[i] = -std::log1p(-u);
        sum += expo[i];
    }
    a.resize(d);
    w.resize(d);
    for (int i = 0; i < d; ++i) a[i] = std::pow(p.eps, expo[i] / sum);
    for (int i = 0; i < d; ++i) {
        double u = rng.uniform(trial, 1, static_cast<std::uint32_t>(i), kDrawAnchor);
        w[i] = torus ? u : u * (1.0 - a[i]);
    }
    double vol = 1.0;
    for (int i = 0; i < d; ++i) vol *= a[i];
    if (vol > p.eps) {
        double f = std::pow(p.eps / vol, 1.0 / d);
        if (f < 1.0)
            for (int i = 0; i < d; ++i) a[i] *= f;
    }
}

}  // namespace

TEST_SUITE("nets") {

TEST_CASE("simplex cover for d=2, gamma=1 is the 15-point grid") {
    SimplexCover cover = build_simplex_cover(2, 1.0);
    CHECK(cover.step == 0.5);
    REQUIRE(cover.points.size() == 15);
    CHECK(cover.points.front() == std::vector<double>{0.0, 0.0});
    CHECK(cover.points[1] == std::vector<double>{0.0, 0.5});
    CHECK(cover.points[4] == std::vector<double>{0.0, 2.0});
    CHECK(cover.points[5] == std::vector<double>{0.5, 0.0});
    CHECK(cover.points.back() == std::vector<double>{2.0, 0.0});
    CHECK(std::is_sorted(cover.points.begin(), cover.points.end()));
    // strictly: no duplicates
    CHECK(std::adjacent_find(cover.points.begin(), cover.points.end()) == cover.points.end());
}

TEST_CASE("round_to_cover is a coordinatewise ceiling") {
    SimplexCover cover = build_simplex_cover(2, 1.0);
    CHECK(cover.points[round_to_cover(cover, {0.3, 0.4})] == std::vector<double>{0.5, 0.5});
    CHECK(cover.points[round_to_cover(cover, {0.5, 1.0})] == std::vector<double>{0.5, 1.0});
    CHECK(round_to_cover(cover, {0.0, 0.0}) == 0);
    CHECK(cover.points[round_to_cover(cover, {1.0, 0.9})] == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(round_to_cover(cover, {0.1, 0.2, 0.3}), input_error);
}

TEST_CASE("anchored net keeps the 12 cover points above the simplex") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    CHECK(p.delta0 == 0.0625);
    CHECK(p.delta == 0.015625);
    CHECK(p.c_d == 0.5);
    Net net = build_anchored_net(p);
    SimplexCover cover = build_simplex_cover(p.d, p.gamma);
    REQUIRE(net.elements.size() == 12);
    for (const NetElement& e : net.elements) {
        CHECK(e.anchor == std::vector<double>{0.0, 0.0});
        CHECK(!e.periodic);
        REQUIRE(e.source >= 0);
        const std::vector<double>& y = cover.points[static_cast<std::size_t>(e.source)];
        double ysum = 0.0;
        for (int i = 0; i < p.d; ++i) {
            CHECK(e.sides[i] == std::pow(p.eps, y[i]));
            ysum += y[i];
        }
        CHECK(ysum >= 1.0 - 1e-12);
        CHECK(e.volume() >= p.delta0 * (1.0 - 1e-12));
        CHECK(e.volume() <= p.eps * (1.0 + 1e-12));
    }
}

TEST_CASE("shift lattice shapes follow the floor formulas") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    CHECK(shift_lattice_shape({0.25, 0.25}, p, false) == std::vector<std::int64_t>{7, 7});
    CHECK(shift_lattice_shape({0.25, 0.25}, p, true) == std::vector<std::int64_t>{9, 9});
    CHECK(shift_lattice_shape({1.0, 1.0}, p, false) == std::vector<std::int64_t>{1, 1});
    CHECK(shift_lattice_shape({1.0, 1.0}, p, true) == std::vector<std::int64_t>{3, 3});
    CHECK(shift_lattice({0.25, 0.25}, p, false).size() == 49);

    // torus shifts reduce mod 1, which may repeat an anchor; that is the
    // formula's output and verify treats elements by (source, k) identity
    auto lat = shift_lattice({1.0, 1.0}, p, true);
    REQUIRE(lat.size() == 9);
    CHECK(lat[0] == std::vector<double>{0.5, 0.5});
    CHECK(lat[1] == std::vector<double>{0.5, 0.0});
    CHECK(lat[2] == std::vector<double>{0.5, 0.5});
    CHECK(lat[3] == std::vector<double>{0.0, 0.5});
}

TEST_CASE("shifted nets scale sides by c_d and anchor on the lattice") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    SimplexCover cover = build_simplex_cover(p.d, p.gamma);
    for (bool periodic : {false, true}) {
        Net net = periodic ? build_torus_net(p) : build_general_net(p);
        REQUIRE(net.elements.size() == (periodic ? 720 : 296));
        for (const NetElement& e : net.elements) {
            CHECK(e.periodic == periodic);
            REQUIRE(e.source >= 0);
            REQUIRE(e.shift.size() == 2);
            const std::vector<double>& y = cover.points[static_cast<std::size_t>(e.source)];
            for (int i = 0; i < p.d; ++i) {
                double b = std::pow(p.eps, y[i]);
                CHECK(e.sides[i] == p.c_d * b);
                double z = e.shift[i] * b / p.d;
                if (periodic) z -= std::floor(z);
                CHECK(e.anchor[i] == z);
                if (!periodic) CHECK(e.anchor[i] + e.sides[i] <= 1.0 + kGeomTol);
            }
        }
    }

    // first source in cover order is y = (0, 1); its first lattice element
    Net gen = build_general_net(p);
    CHECK(gen.elements[0].anchor == std::vector<double>{0.5, 0.125});
    CHECK(gen.elements[0].sides == std::vector<double>{0.5, 0.125});
    CHECK(gen.elements[0].shift == std::vector<std::int32_t>{1, 1});
}

TEST_CASE("cardinality estimate equals the built size") {
    struct Cfg {
        int d;
        double eps, gamma;
        bool torus_too;
    };
    for (const Cfg& c : {Cfg{2, 0.25, 1.0, true}, Cfg{2, 0.2, 0.0, true},
                         Cfg{3, 0.35, 1.0, true}}) {
        NetParams p = NetParams::make(c.d, c.eps, c.gamma);
        CHECK(estimate_net_cardinality(p, NetKind::anchored) ==
              static_cast<double>(build_anchored_net(p).elements.size()));
        CHECK(estimate_net_cardinality(p, NetKind::general) ==
              static_cast<double>(build_general_net(p).elements.size()));
        if (c.torus_too)
            CHECK(estimate_net_cardinality(p, NetKind::torus) ==
                  static_cast<double>(build_torus_net(p).elements.size()));
        for (NetKind kind : {NetKind::anchored, NetKind::general, NetKind::torus})
            CHECK(paper_cardinality_bound(p, kind) > 0.0);
    }
}

TEST_CASE("default gamma makes delta0 = eps/e") {
    NetParams p = NetParams::make(2, 0.2);
    CHECK(p.gamma == doctest::Approx(1.0 / std::log(5.0)).epsilon(1e-15));
    CHECK(p.delta0 == doctest::Approx(0.2 / std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("verification passes on intact nets through the fast path") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    for (NetKind kind : {NetKind::anchored, NetKind::general, NetKind::torus}) {
        Net net = kind == NetKind::anchored  ? build_anchored_net(p)
                  : kind == NetKind::general ? build_general_net(p)
                                             : build_torus_net(p);
        VerifyReport rep = verify_approximation(net, 2000, 42);
        CHECK(rep.trials == 2000);
        CHECK(rep.failures == 0);
        CHECK(rep.fast_path_hits == 2000);
        CHECK(!rep.has_witness);
    }
    NetParams q = NetParams::make(3, 0.35, 1.0);
    VerifyReport rep = verify_approximation(build_general_net(q), 500, 7);
    CHECK(rep.failures == 0);
    CHECK(rep.fast_path_hits == 500);
}

TEST_CASE("removing the covering elements is detected with an exact witness") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    Net net = build_general_net(p);
    const std::uint64_t seed = 777;
    CHECK(verify_approximation(net, 1, seed).failures == 0);

    std::vector<double> w, a;
    replay_trial(p, seed, 0, false, w, a);

    Net pruned;
    pruned.params = net.params;
    pruned.kind = net.kind;
    std::size_t removed = 0;
    for (const NetElement& e : net.elements) {
        bool inside = true;
        for (int i = 0; i < p.d; ++i) {
            if (e.anchor[i] < w[i] - kGeomTol ||
                e.anchor[i] + e.sides[i] > w[i] + a[i] + kGeomTol) {
                inside = false;
                break;
            }
        }
        if (inside) {
            ++removed;
            continue;
        }
        pruned.elements.push_back(e);
    }
    REQUIRE(removed > 0);

    VerifyReport rep = verify_approximation(pruned, 1, seed);
    CHECK(rep.failures == 1);
    REQUIRE(rep.has_witness);
    CHECK(rep.witness_anchor == w);
    CHECK(rep.witness_sides == a);
}

TEST_CASE("verification survives a file round trip") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    Net net = build_torus_net(p);
    std::ostringstream out;
    write_net(out, net);
    std::istringstream in(out.str());
    Net back = read_net(in, "buf");
    VerifyReport rep = verify_approximation(back, 500, 5);
    CHECK(rep.failures == 0);
    CHECK(rep.fast_path_hits == 500);
}

TEST_CASE("find_containing_element shrinks oversized queries") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    Net net = build_general_net(p);
    CHECK(find_containing_element(net, {0.2, 0.2}, {0.5, 0.5}) >= 0);
    CHECK(find_containing_element(net, {0.0, 0.0}, {1.0, 1.0}) >= 0);
    CHECK(find_containing_element(net, {0.3, 0.3}, {0.01, 0.01}) == -1);
    CHECK_THROWS_AS(find_containing_element(net, {0.2}, {0.5, 0.5}), input_error);
}

TEST_CASE("a fine grid certifies, a lone point does not") {
    NetParams p = NetParams::make(2, 0.25, 1.0);
    Net net = build_general_net(p);
    PointSet grid = center_grid(50);
    CertifyReport r0 = net_certifies(net, grid, 0);
    CHECK(r0.certified);
    CHECK(r0.deficient.empty());
    CHECK(r0.elements == net.elements.size());
    CertifyReport r2 = net_certifies(net, grid, 2);
    CHECK(r2.certified);
    CHECK(r2.k == 2);

    PointSet lone(2);
    double row[2] = {0.01, 0.01};
    lone.append(row);
    CertifyReport bad = net_certifies(net, lone, 0);
    CHECK(!bad.certified);
    CHECK(!bad.deficient.empty());

    Net tor = build_torus_net(p);
    CHECK(net_certifies(tor, grid, 0).certified);

    CHECK_THROWS_AS(net_certifies(net, PointSet(3), 0), input_error);
    CHECK_THROWS_AS(net_certifies(net, grid, -1), input_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(NetParams::make(1, 0.5), input_error);
    CHECK_THROWS_AS(NetParams::make(2, 1.0), input_error);
    CHECK_THROWS_AS(NetParams::make(2, 0.0), input_error);
    CHECK_THROWS_AS(build_simplex_cover(2, 0.0), input_error);
    CHECK_THROWS_AS(build_simplex_cover(1, 1.0), input_error);
    NetParams p = NetParams::make(2, 0.25, 1.0);
    Net net = build_anchored_net(p);
    CHECK_THROWS_AS(verify_approximation(net, 0, 1), input_error);
}

}  // TEST_SUITE
