#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wirefit/coupling.hpp"

#include <cmath>
#include <random>

using namespace wirefit;

namespace {

RectilinearGrid unit_cube(int n) {
    return RectilinearGrid(uniform_axis(0, 1, n), uniform_axis(0, 1, n), uniform_axis(0, 1, n));
}

double row_sum(const SpMat& m, long row) {
    double s = 0.0;
    for (int c = 0; c < m.outerSize(); ++c)
        for (SpMat::InnerIterator it(m, c); it; ++it)
            if (it.row() == row)
                s += it.value();
    return s;
}

Vec row_sums(const SpMat& m) { return m * Vec::Ones(m.cols()); }

} // namespace

TEST_CASE("build_Ps: smallest case and constants in kernel") {
    SpMat P = build_Ps(2);
    REQUIRE(P.rows() == 1);
    CHECK(P.coeff(0, 0) == -1.0);
    CHECK(P.coeff(0, 1) == 1.0);

    SpMat P6 = build_Ps(6);
    CHECK(P6.rows() == 5);
    CHECK(P6.cols() == 6);
    CHECK((P6 * Vec::Constant(6, 3.7)).lpNorm<Eigen::Infinity>() == 0.0);
    for (int l = 0; l < 5; ++l) {
        CHECK(P6.coeff(l, l) == -1.0);
        CHECK(P6.coeff(l, l + 1) == 1.0);
    }
}

TEST_CASE("trilinear_row: node, cell center, face center") {
    RectilinearGrid g = unit_cube(3);

    auto at_node = trilinear_row(g, {0.5, 0.5, 0.5});
    REQUIRE(at_node.size() == 1);
    CHECK(at_node[0].first == g.node_index(1, 1, 1));
    CHECK(at_node[0].second == 1.0);

    auto center = trilinear_row(g, {0.25, 0.25, 0.25});
    REQUIRE(center.size() == 8);
    for (auto& [idx, w] : center)
        CHECK(w == doctest::Approx(0.125).epsilon(1e-14));

    auto face = trilinear_row(g, {0.25, 0.25, 0.5});
    REQUIRE(face.size() == 4);
    for (auto& [idx, w] : face)
        CHECK(w == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("trilinear_row rejects outside points") {
    RectilinearGrid g = unit_cube(3);
    CHECK_THROWS(trilinear_row(g, {1.5, 0.5, 0.5}));
    CHECK_THROWS(trilinear_row(g, {0.5, -0.1, 0.5}));
}

TEST_CASE("R_N is a selector for on-grid wire nodes and row-stochastic always") {
    RectilinearGrid g = unit_cube(5);
    WireCurve wire = WireCurve::segment({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0});
    std::vector<double> s{0.0, 0.25, 0.5, 0.75, 1.0};
    SpMat R = build_RN(g, wire, s);
    CHECK(R.nonZeros() == 5); // one unit entry per row
    Vec sums = row_sums(R);
    for (long j = 0; j < 5; ++j)
        CHECK(sums[j] == doctest::Approx(1.0).epsilon(1e-14));

    // generic curve: <= 8 entries per row, sums still one
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        WireCurve c = WireCurve::segment({u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
        SpMat Rr = build_RN(g, c, {0.0, 0.37, 1.0});
        CHECK(Rr.nonZeros() <= 24);
        Vec rs = row_sums(Rr);
        for (long j = 0; j < rs.size(); ++j)
            CHECK(rs[j] == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("X pattern of pairwise node differences for an on-grid wire") {
    // wire along z, s-nodes on grid planes: X rows are e_{j+1} - e_j selectors
    RectilinearGrid g = unit_cube(5);
    WireCurve wire = WireCurve::segment({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0});
    CouplingSet cs =
        build_coupling(g, wire, {0.0, 0.25, 0.5, 0.75, 1.0}, 0.0, 1e-6, 0.5641895835477563, 8);
    CHECK(cs.X.rows() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(cs.X.coeff(j, g.node_index(2, 2, j)) == -1.0);
        CHECK(cs.X.coeff(j, g.node_index(2, 2, j + 1)) == 1.0);
    }
    Vec xsum = row_sums(cs.X);
    CHECK(xsum.lpNorm<Eigen::Infinity>() == 0.0);
    Vec asum = row_sums(cs.X_avg);
    for (long j = 0; j < asum.size(); ++j)
        CHECK(asum[j] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("arc_lengths: uniform segment split and single element") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {3, 0, 4}); // length 5
    auto a = arc_lengths(seg, {0.0, 0.25, 0.5, 0.75, 1.0});
    for (double l : a)
        CHECK(l == doctest::Approx(1.25).epsilon(1e-12));

    WireCurve unit = WireCurve::segment({0, 0, 0}, {1, 0, 0});
    CHECK(arc_lengths(unit, {0.0, 1.0})[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arc_lengths of the bent-wire Bezier against a fine chord sum") {
    // oracle: 1e6-segment polyline length, independent of the quadrature
    WireCurve bez = WireCurve::bezier({0.5, 0.02, 0.02}, {0.5, 0.02, 0.98}, 0.7, {0, 1, 0});
    const int n = 1'000'000;
    double chord = 0.0;
    Vec3 prev = bez.position(0.0);
    for (int i = 1; i <= n; ++i) {
        Vec3 p = bez.position(double(i) / n);
        chord += (p - prev).norm();
        prev = p;
    }
    auto a = arc_lengths(bez, {0.0, 0.3, 0.8, 1.0});
    double total = a[0] + a[1] + a[2];
    CHECK(total == doctest::Approx(chord).epsilon(1e-9));

    // refinement invariance of the total
    auto fine = arc_lengths(bez, {0.0, 0.15, 0.3, 0.55, 0.8, 0.9, 1.0});
    double total2 = 0.0;
    for (double l : fine)
        total2 += l;
    CHECK(total2 == doctest::Approx(total).epsilon(1e-10));
}

TEST_CASE("rotation-minimizing frames: straight wire and orthonormality") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {0, 0, 1});
    auto frames = rm_frame(seg, {0.0, 0.5, 1.0});
    for (const Frame& f : frames) {
        CHECK(f.tangent.z == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(f.n1.dot(f.tangent)) < 1e-14);
        CHECK((f.tangent.cross(f.n1) - f.n2).norm() < 1e-12);
        CHECK(std::abs(f.n1.norm() - 1.0) < 1e-12);
        CHECK(std::abs(f.n2.norm() - 1.0) < 1e-12);
    }
    // constant along a straight wire
    CHECK((frames[0].n1 - frames[2].n1).norm() < 1e-14);
}

TEST_CASE("rotation-minimizing frames: no flips along a planar Bezier") {
    WireCurve bez = WireCurve::bezier({0.5, 0.02, 0.02}, {0.5, 0.02, 0.98}, 0.7, {0, 1, 0});
    std::vector<double> s;
    for (int i = 0; i <= 64; ++i)
        s.push_back(double(i) / 64.0);
    auto frames = rm_frame(bez, s);
    for (size_t j = 1; j < frames.size(); ++j) {
        CHECK(frames[j].n1.dot(frames[j - 1].n1) > 0.0);
        CHECK(frames[j].n2.dot(frames[j - 1].n2) > 0.0);
        CHECK((frames[j].tangent.cross(frames[j].n1) - frames[j].n2).norm() < 1e-12);
    }
}

TEST_CASE("frenet_curvature_max: segment, circle arc, bent-wire Bezier") {
    CHECK(frenet_curvature_max(WireCurve::segment({0, 0, 0}, {1, 2, 3})) == 0.0);

    // quarter circle of radius R = 0.35 (test-only curve)
    double R = 0.35;
    WireCurve arc = WireCurve::custom(
        [R](double s) {
            return Vec3{R * std::cos(0.5 * M_PI * s), R * std::sin(0.5 * M_PI * s), 0.0};
        },
        [R](double s) {
            double w = 0.5 * M_PI;
            return Vec3{-R * w * std::sin(w * s), R * w * std::cos(w * s), 0.0};
        },
        [R](double s) {
            double w = 0.5 * M_PI;
            return Vec3{-R * w * w * std::cos(w * s), -R * w * w * std::sin(w * s), 0.0};
        });
    CHECK(frenet_curvature_max(arc) == doctest::Approx(1.0 / R).epsilon(1e-10));

    WireCurve bez = WireCurve::bezier({0.5, 0.02, 0.02}, {0.5, 0.02, 0.98}, 0.7, {0, 1, 0});
    CHECK(frenet_curvature_max(bez) == doctest::Approx(6.08).epsilon(0.05 / 6.08));
}

TEST_CASE("build_Pi: gamma identities and degenerate radius") {
    RectilinearGrid g = unit_cube(9);
    WireCurve wire = WireCurve::segment({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0});
    std::vector<double> s{0.0, 0.5, 1.0};
    double r0 = std::sqrt(1.0 / M_PI);

    // r_cpl = r_bar -> gamma = 1
    auto [pi1, g1] = build_Pi(g, wire, s, 1e-6, 1e-6, r0, 8);
    CHECK(g1 == doctest::Approx(1.0).epsilon(1e-14));
    (void)pi1;

    // r_cpl = 0 -> Pi = R_N row for row
    auto [pi0, g0] = build_Pi(g, wire, s, 0.0, 1e-6, r0, 8);
    CHECK(g0 == 1.0);
    SpMat R = build_RN(g, wire, s);
    CHECK(SpMat(pi0 - R).norm() == 0.0);

    // row sums equal gamma
    auto [pi, gam] = build_Pi(g, wire, s, 0.125, 1e-6, r0, 16);
    Vec sums = row_sums(pi);
    for (long j = 0; j < sums.size(); ++j)
        CHECK(sums[j] == doctest::Approx(gam).epsilon(1e-13));

    // invalid radius ordering
    CHECK_THROWS(build_Pi(g, wire, s, r0 * 1.5, 1e-6, r0, 8));
    CHECK_THROWS(build_Pi(g, wire, s, 0.125, 1e-6, 1e-7, 8));
}

TEST_CASE("Pi applied to the log line-source field reproduces the 1D closed form") {
    // nodal samples of u(r) = -(1/2pi) log(r/r0) around a centered z-wire;
    // Pi must return ubar = -(1/2pi) log(r_bar/r0) at every node
    const int n = 33; // h = 1/32
    RectilinearGrid g = unit_cube(n);
    const double r0 = std::sqrt(1.0 / M_PI);
    const double r_bar = 1e-6;
    const double h = 1.0 / (n - 1);
    const double r_cpl = 2.0 * h;

    WireCurve wire = WireCurve::segment({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0});
    std::vector<double> s;
    for (int i = 0; i <= 8; ++i)
        s.push_back(double(i) / 8.0);
    auto [pi, gam] = build_Pi(g, wire, s, r_cpl, r_bar, r0, 32);
    (void)gam;

    Vec u = Vec::Zero(g.node_count());
    for (long k = 0; k < g.node_count(); ++k) {
        Vec3 p = g.node_position(k);
        double r = std::hypot(p.x - 0.5, p.y - 0.5);
        u[k] = (r > 0.0) ? -std::log(r / r0) / (2.0 * M_PI) : 0.0;
    }
    // the averaging circle must not touch the singular axis nodes
    for (int c = 0; c < pi.outerSize(); ++c)
        for (SpMat::InnerIterator it(pi, c); it; ++it) {
            Vec3 p = g.node_position(it.col());
            CHECK(std::hypot(p.x - 0.5, p.y - 0.5) > 0.5 * h);
        }

    const double expected = -std::log(r_bar / r0) / (2.0 * M_PI);
    Vec ubar = pi * u;
    for (long j = 0; j < ubar.size(); ++j)
        CHECK(std::abs(ubar[j] - expected) / expected < 1e-2);
}

TEST_CASE("Pi quadrature converges in the circle point count") {
    RectilinearGrid g = unit_cube(17);
    WireCurve wire = WireCurve::segment({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0});
    std::vector<double> s{0.0, 0.25, 0.5, 0.75, 1.0};
    double r0 = std::sqrt(1.0 / M_PI);
    auto [pi_n, g1] = build_Pi(g, wire, s, 0.125, 1e-6, r0, 16);
    auto [pi_2n, g2] = build_Pi(g, wire, s, 0.125, 1e-6, r0, 32);
    (void)g1;
    (void)g2;

    Vec u(g.node_count());
    for (long k = 0; k < g.node_count(); ++k) {
        Vec3 p = g.node_position(k);
        u[k] = std::sin(3.0 * p.x) * std::cos(2.0 * p.y) + p.z;
    }
    Vec a = pi_n * u, b = pi_2n * u;
    for (long j = 0; j < a.size(); ++j)
        CHECK(std::abs(a[j] - b[j]) / std::abs(b[j]) < 1e-3);
}

TEST_CASE("point coupling covers the 0D case") {
    RectilinearGrid g(uniform_axis(0, 1, 9), uniform_axis(0, 1, 9), Axis1D({0.0}));
    double r0 = std::sqrt(1.0 / M_PI);
    CouplingSet cs = point_coupling(g, {0.5, 0.5, 0.0}, 0.125, 1e-6, r0, 16);
    CHECK(cs.RN.rows() == 1);
    CHECK(cs.X.rows() == 0);
    CHECK(row_sum(cs.RN, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(row_sum(cs.Pi, 0) == doctest::Approx(cs.gamma).epsilon(1e-13));
    CHECK(cs.gamma > 1.0);
}
