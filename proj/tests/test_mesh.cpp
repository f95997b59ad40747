#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wirefit/grid.hpp"

#include <numeric>

using namespace wirefit;

TEST_CASE("gradient of 2-node chain is a single -1/+1 row") {
    RectilinearGrid g(Axis1D({0.0, 1.0}), Axis1D({0.0}), Axis1D({0.0}));
    SpMat G = build_gradient(g);
    REQUIRE(G.rows() == 1);
    REQUIRE(G.cols() == 2);
    CHECK(G.coeff(0, 0) == -1.0);
    CHECK(G.coeff(0, 1) == 1.0);
}

TEST_CASE("gradient annihilates constants and counts rows") {
    RectilinearGrid g(Axis1D({0.0, 0.5, 1.0}), Axis1D({0.0, 0.4, 1.0}),
                      Axis1D({0.0, 0.7, 1.0}));
    SpMat G = build_gradient(g);
    CHECK(G.rows() == 54); // 3 directions x 2 x 3 x 3
    Vec ones = Vec::Ones(g.node_count());
    CHECK((G * ones).lpNorm<Eigen::Infinity>() == 0.0);

    // exactly one +1 and one -1 per row
    Vec rowsum = G * Vec::Ones(g.node_count());
    Vec rowabs = G.cwiseAbs() * Vec::Ones(g.node_count());
    CHECK(rowsum.lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((rowabs.array() - 2.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("combinatorial counts of a 4x3x2 grid") {
    RectilinearGrid g(uniform_axis(0, 1, 4), uniform_axis(0, 1, 3), uniform_axis(0, 1, 2));
    long nx = 4, ny = 3, nz = 2;
    CHECK(g.node_count() == nx * ny * nz);
    CHECK(g.edge_count() ==
          (nx - 1) * ny * nz + nx * (ny - 1) * nz + nx * ny * (nz - 1));
    CHECK(g.facet_count() ==
          nx * (ny - 1) * (nz - 1) + (nx - 1) * ny * (nz - 1) + (nx - 1) * (ny - 1) * nz);
    CHECK(g.cell_count() == (nx - 1) * (ny - 1) * (nz - 1));
}

TEST_CASE("grade_layers: equidistant for mu = 1") {
    auto r = grade_layers(1.0, 4, 1.0);
    std::vector<double> want{0.0, 0.25, 0.5, 0.75, 1.0};
    REQUIRE(r.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i)
        CHECK(r[i] == doctest::Approx(want[i]).epsilon(1e-15));
}

TEST_CASE("grade_layers: endpoint identity and direct formula") {
    auto r = grade_layers(1.0, 2, 0.5);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == doctest::Approx(0.25).epsilon(1e-15)); // (1/2)^2
    CHECK(r[2] == 1.0);

    auto r2 = grade_layers(0.37, 7, 0.83);
    CHECK(r2.back() == 0.37);
    for (size_t i = 1; i < r2.size(); ++i)
        CHECK(r2[i] > r2[i - 1]);
}

TEST_CASE("grade_layers rejects bad grading") {
    CHECK_THROWS(grade_layers(1.0, 3, 0.0));
    CHECK_THROWS(grade_layers(1.0, 3, 1.5));
    CHECK_THROWS(grade_layers(1.0, 3, -0.2));
    CHECK_THROWS(grade_layers(-1.0, 3, 0.5));
}

TEST_CASE("refine_axis_local inserts one mirrored layer") {
    Axis1D a({0.0, 0.5, 1.0});
    Axis1D r = refine_axis_local(a, 0.5, 0.2, 1, 1.0, 1e-12);
    std::vector<double> want{0.0, 0.3, 0.5, 0.7, 1.0};
    REQUIRE(r.size() == 5);
    for (int i = 0; i < 5; ++i)
        CHECK(r[i] == doctest::Approx(want[static_cast<size_t>(i)]).epsilon(1e-14));
}

TEST_CASE("refine_axis_local refuses overlapping refinement region") {
    Axis1D a({0.0, 0.45, 0.5, 1.0});
    CHECK_THROWS(refine_axis_local(a, 0.5, 0.2, 2, 1.0, 1e-12));
    // x0 itself pre-existing is the allowed exception
    CHECK_NOTHROW(refine_axis_local(a, 0.5, 0.04, 2, 1.0, 1e-12));
    // x0 must be an axis point
    CHECK_THROWS(refine_axis_local(a, 0.7, 0.05, 1, 1.0, 1e-12));
}

TEST_CASE("refine_axis_local tensor point count identity") {
    // 2N points per axis; (2N+1)^2 - 1 additional points in 2D
    int N = 3;
    Axis1D a({0.0, 0.5, 1.0});
    Axis1D r = refine_axis_local(a, 0.5, 0.1, N, 0.7, 1e-12);
    CHECK(r.size() == a.size() + 2 * N);
    long before = static_cast<long>(a.size()) * a.size();
    long after = static_cast<long>(r.size()) * r.size();
    // the refined region contributes (2N+1)^2 - 1 extra tensor points over
    // the 1-point-per-axis baseline at x0
    CHECK(after - before ==
          2 * static_cast<long>(a.size()) * (2 * N) + (2 * N) * (2 * N));
    CHECK((2 * N + 1) * (2 * N + 1) - 1 == 2 * (2 * N) + (2 * N) * (2 * N));
}

TEST_CASE("graded axis: mu = 1 gives spacing d/(2N)") {
    Axis1D a = graded_axis(0.0, 1.0, 0.5, 4, 1.0);
    REQUIRE(a.size() == 9);
    for (int i = 0; i < a.intervals(); ++i)
        CHECK(a.interval(i) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("graded axis: layer rule mirrored about the center") {
    // mu = 0.5, N = 2, d = 1: radii r_i = 0.5 (i/2)^2 -> {0, 0.125, 0.5}
    Axis1D a = graded_axis(0.0, 1.0, 0.5, 2, 0.5);
    std::vector<double> want{0.0, 0.375, 0.5, 0.625, 1.0};
    REQUIRE(a.size() == 5);
    for (int i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(want[static_cast<size_t>(i)]).epsilon(1e-14));
}

TEST_CASE("graded and equidistant grids have equal point counts") {
    for (int N : {2, 5, 9}) {
        Axis1D graded = graded_axis(0.0, 1.0, 0.5, N, 0.5);
        Axis1D unif = graded_axis(0.0, 1.0, 0.5, N, 1.0);
        CHECK(graded.size() == unif.size());
        CHECK(graded.size() == 2 * N + 1);
    }
}

TEST_CASE("dual measures on a uniform grid") {
    double h = 0.25;
    RectilinearGrid g(uniform_axis(0, 1, 5), uniform_axis(0, 1, 5), uniform_axis(0, 1, 5));
    DualMeasures dm = dual_measures(g);

    // interior edge: dual facet h^2; interior node: dual volume h^3
    long e = g.edge_index(0, 1, 2, 2);
    CHECK(dm.dual_facet_area[e] == doctest::Approx(h * h).epsilon(1e-14));
    CHECK(dm.primal_edge_len[e] == doctest::Approx(h).epsilon(1e-14));
    long n = g.node_index(2, 2, 2);
    CHECK(dm.dual_volume[n] == doctest::Approx(h * h * h).epsilon(1e-14));

    // corner node: octant clipping h^3/8
    CHECK(dm.dual_volume[g.node_index(0, 0, 0)] ==
          doctest::Approx(h * h * h / 8.0).epsilon(1e-14));
}

TEST_CASE("dual volumes partition the box exactly") {
    RectilinearGrid g(Axis1D({0.0, 0.1, 0.35, 1.0}), Axis1D({0.0, 0.6, 1.0}),
                      Axis1D({0.0, 0.2, 0.55, 0.7, 1.0}));
    DualMeasures dm = dual_measures(g);
    CHECK(dm.dual_volume.sum() == doctest::Approx(1.0).epsilon(1e-12));

    // dual facet areas of each x-line partition the yz cross-section
    double area = 0.0;
    for (int j = 0; j < g.points(1); ++j)
        for (int k = 0; k < g.points(2); ++k)
            area += dm.dual_facet_area[g.edge_index(0, 0, j, k)];
    CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary dual areas partition the surface") {
    RectilinearGrid g(Axis1D({0.0, 0.3, 1.0}), Axis1D({0.0, 0.45, 0.8, 1.0}),
                      Axis1D({0.0, 0.5, 1.0}));
    DualMeasures dm = dual_measures(g);
    CHECK(dm.boundary_dual_area.sum() == doctest::Approx(6.0).epsilon(1e-12));
    for (long n = 0; n < g.node_count(); ++n) {
        if (g.is_boundary_node(n))
            CHECK(dm.boundary_dual_area[n] > 0.0);
        else
            CHECK(dm.boundary_dual_area[n] == 0.0);
    }
}

TEST_CASE("degenerate single-plane grid has no z edges and unit-slab duals") {
    RectilinearGrid g(uniform_axis(0, 1, 3), uniform_axis(0, 1, 3), Axis1D({0.0}));
    CHECK(g.edge_count_dir(2) == 0);
    CHECK(g.edge_count() == 2 * 3 * 2 * 1 + 0);
    DualMeasures dm = dual_measures(g);
    CHECK(dm.dual_volume.sum() == doctest::Approx(1.0).epsilon(1e-12)); // area x unit thickness
    long e = g.edge_index(0, 0, 1, 0);
    CHECK(dm.dual_facet_area[e] == doctest::Approx(0.5 * 1.0).epsilon(1e-12));
}

TEST_CASE("global graded grid point counts match the equidistant grid") {
    RectilinearGrid gm = build_global_graded({0, 0, 0}, {1, 1, 1}, {0.5, 0.5, 0.5}, 4, 0.5);
    RectilinearGrid g1 = build_global_graded({0, 0, 0}, {1, 1, 1}, {0.5, 0.5, 0.5}, 4, 1.0);
    CHECK(gm.node_count() == g1.node_count());
    CHECK(gm.points(0) == 9);
}

TEST_CASE("axis insert snaps to existing points") {
    Axis1D a({0.0, 0.5, 1.0});
    int added = a.insert({0.5 + 1e-15, 0.25}, 1e-12);
    CHECK(added == 1);
    CHECK(a.size() == 4);
}
