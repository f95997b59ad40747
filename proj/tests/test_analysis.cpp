#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wirefit/analysis.hpp"

#include <cmath>
#include <random>

using namespace wirefit;

namespace {
RectilinearGrid unit_cube(int n) {
    return RectilinearGrid(uniform_axis(0, 1, n), uniform_axis(0, 1, n), uniform_axis(0, 1, n));
}
} // namespace

TEST_CASE("1D L2 norm of a constant on a unit wire") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {0, 0, 1});
    Wire1DGrid w = build_wire1d(seg, {0.0, 0.3, 0.7, 1.0});
    Vec d_dual = Eigen::Map<const Vec>(w.dual_len.data(), 4);
    Vec u = Vec::Constant(4, -2.5);
    CHECK(norm_1d_l2(u, d_dual) == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("1D H1 seminorm of a linear profile over one unit element") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {0, 0, 1});
    Wire1DGrid w = build_wire1d(seg, {0.0, 1.0});
    Vec d_s = Eigen::Map<const Vec>(w.element_arclen.data(), 1);
    SpMat Ps = build_Ps(2);
    Vec u(2);
    u << 0.0, 3.0;
    CHECK(norm_1d_h1semi(u, Ps, d_s) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("3D L2 norm of one over the evaluation box") {
    RectilinearGrid g = unit_cube(9);
    Axis1D ax = g.axis(0);
    ax.insert({0.45}, 1e-12);
    RectilinearGrid g2(std::move(ax), g.axis(1), g.axis(2));
    Box omega{{0, 0, 0}, {0.45, 1.0, 1.0}};
    Vec w = omega_dual_volumes(g2, omega);
    CHECK(w.sum() == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(norm_3d_l2(Vec::Ones(g2.node_count()), w) ==
          doctest::Approx(std::sqrt(0.45)).epsilon(1e-12));

    // restriction to the full domain reproduces the plain dual volumes
    Box full{{0, 0, 0}, {1, 1, 1}};
    Vec wf = omega_dual_volumes(g2, full);
    DualMeasures dm = dual_measures(g2);
    CHECK((wf - dm.dual_volume).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("epsilon error: zero at equality, one at doubling") {
    Vec w = Vec::Constant(5, 0.2);
    Vec exact(5);
    exact << 1.0, 2.0, -1.0, 0.5, 3.0;
    CHECK(error_eps(exact, exact, w) == 0.0);
    CHECK(error_eps(2.0 * exact, exact, w) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS(error_eps(exact, Vec::Zero(5), w));
}

TEST_CASE("error measures are scale invariant") {
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    Vec w(6), uh(6), ue(6);
    for (int i = 0; i < 6; ++i) {
        w[i] = 0.1 + std::abs(nd(rng));
        uh[i] = nd(rng);
        ue[i] = nd(rng) + 2.0;
    }
    double e1 = error_eps(uh, ue, w);
    double e2 = error_eps(137.0 * uh, 137.0 * ue, w);
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-13));

    double d1 = error_delta(norm_3d_l2(uh, w), norm_3d_l2(ue, w));
    double d2 = error_delta(norm_3d_l2(137.0 * uh, w), norm_3d_l2(137.0 * ue, w));
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-13));

    double D1 = error_Delta(uh, ue, w);
    double D2 = error_Delta(137.0 * uh, 137.0 * ue, w);
    CHECK(D1 == doctest::Approx(D2).epsilon(1e-13));
}

TEST_CASE("delta vanishes when the discrete norm matches the continuous one") {
    // constant field: the discrete norm is exact
    WireCurve seg = WireCurve::segment({0, 0, 0}, {0, 0, 1});
    Wire1DGrid w = build_wire1d(seg, {0.0, 0.25, 0.5, 0.75, 1.0});
    Vec d_dual = Eigen::Map<const Vec>(w.dual_len.data(), 5);
    Vec u = Vec::Constant(5, 4.0);
    CHECK(error_delta(norm_1d_l2(u, d_dual), 4.0) < 1e-14);
}

TEST_CASE("analytic references: log field, internal resistance, ratio identity") {
    double r0 = std::sqrt(1.0 / M_PI);
    CHECK(analytic_log2d(r0, 1.0, 1.0, r0) == 0.0);
    CHECK_THROWS(analytic_log2d(0.0, 1.0, 1.0, r0));

    // direct evaluation of the printed formula
    CHECK(analytic_rint(1.0, 1e-6, r0) ==
          doctest::Approx(std::log(r0 / 1e-6) / (2.0 * M_PI)).epsilon(1e-15));
    CHECK(analytic_rint(1.0, 1e-6, r0) == doctest::Approx(2.108).epsilon(1e-3));

    StraightWireSolution sol{1.0, 1.0, r0, 1e-6, 1.0};
    for (double z : {0.2, 0.5, 0.9}) {
        double ratio = sol.phi_bar(z) / sol.phi(0.3, z);
        CHECK(ratio == doctest::Approx(std::log(1e-6 / r0) / std::log(0.3 / r0)).epsilon(1e-13));
    }
    // continuous norms of the linear 1D profile
    double c = -1.0 / (2.0 * M_PI) * std::log(1e-6 / r0);
    CHECK(sol.phi_bar_l2_norm() == doctest::Approx(c / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(sol.phi_bar_h1_seminorm() == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("fit_order: exact powers, constants, noisy data") {
    std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e2, e0, e15;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double hi : h) {
        e2.push_back(3.0 * hi * hi);
        e0.push_back(0.7);
        e15.push_back(std::pow(hi, 1.5) * (1.0 + 0.01 * u(rng)));
    }
    CHECK(fit_order(h, e2).slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit_order(h, e0).slope == doctest::Approx(0.0).epsilon(1e-12));
    double s = fit_order(h, e15).slope;
    CHECK(s > 1.4);
    CHECK(s < 1.6);

    CHECK(fit_order(h, e2).local.size() == 3);
    CHECK_THROWS(fit_order({0.1, 0.05}, {1.0, 0.5}));          // too few
    CHECK_THROWS(fit_order({0.1, 0.05, 0.0}, {1.0, 0.5, 0.2})); // nonpositive
}

TEST_CASE("grid-to-grid interpolation is exact for trilinear fields") {
    RectilinearGrid fine = unit_cube(9);
    RectilinearGrid coarse(Axis1D({0.0, 0.3, 0.7, 1.0}), Axis1D({0.0, 0.45, 1.0}),
                           Axis1D({0.0, 0.6, 1.0}));
    Vec u(fine.node_count());
    for (long n = 0; n < fine.node_count(); ++n) {
        Vec3 p = fine.node_position(n);
        u[n] = 1.0 + 2.0 * p.x - p.y + 0.5 * p.z;
    }
    Vec v = interpolate_to_grid(fine, u, coarse);
    for (long n = 0; n < coarse.node_count(); ++n) {
        Vec3 p = coarse.node_position(n);
        CHECK(v[n] == doctest::Approx(1.0 + 2.0 * p.x - p.y + 0.5 * p.z).epsilon(1e-13));
    }
}

TEST_CASE("1D interpolation reproduces linear profiles and nested samples") {
    std::vector<double> sf{0.0, 0.25, 0.5, 0.75, 1.0};
    Vec uf(5);
    uf << 0.0, 0.5, 1.0, 1.5, 2.0;
    Vec v = interpolate_1d(sf, uf, {0.0, 0.5, 1.0});
    CHECK(v[0] == 0.0);
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(2.0).epsilon(1e-14));
    Vec w = interpolate_1d(sf, uf, {0.1, 0.9});
    CHECK(w[0] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(w[1] == doctest::Approx(1.8).epsilon(1e-13));
}
