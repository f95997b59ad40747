#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wirefit/materials.hpp"

#include <cmath>

using namespace wirefit;

namespace {
RectilinearGrid unit_cube(int n) {
    return RectilinearGrid(uniform_axis(0, 1, n), uniform_axis(0, 1, n), uniform_axis(0, 1, n));
}
} // namespace

TEST_CASE("edge conductance: homogeneous uniform grid gives h per interior edge") {
    double h = 0.25;
    RectilinearGrid g = unit_cube(5);
    DualMeasures dm = dual_measures(g);
    Vec cells = Vec::Ones(g.cell_count());
    Vec m = edge_conductance_matrix(g, dm, cells);
    long e = g.edge_index(0, 1, 2, 2);
    CHECK(m[e] == doctest::Approx(h * h / h).epsilon(1e-14));

    // boundary-tangent edge sees a clipped dual facet
    long eb = g.edge_index(0, 1, 0, 0);
    CHECK(m[eb] == doctest::Approx(0.25 * h * h / h).epsilon(1e-14));
}

TEST_CASE("edge conductance: area-weighted mean between alpha 1 and 3") {
    // 2x1x1-cell slab, edge shared by both cells with equal quarter areas
    RectilinearGrid g(uniform_axis(0, 1, 2), uniform_axis(0, 1, 3), uniform_axis(0, 1, 2));
    DualMeasures dm = dual_measures(g);
    Vec cells(2);
    cells << 1.0, 3.0;
    // the x-edge at the shared face j=1 averages both cells evenly
    Vec m = edge_conductance_matrix(g, dm, cells);
    long e = g.edge_index(0, 0, 1, 0);
    double area = dm.dual_facet_area[e];
    CHECK(m[e] == doctest::Approx(2.0 * area / 1.0).epsilon(1e-14));
}

TEST_CASE("edge conductance: hand-computed nonuniform two-cell column") {
    // x-edge with transverse y-intervals 0.2 and 0.6: weights 0.1 / 0.3
    RectilinearGrid g(uniform_axis(0, 1, 2), Axis1D({0.0, 0.2, 0.8}), Axis1D({0.0, 1.0}));
    DualMeasures dm = dual_measures(g);
    Vec cells(2);
    cells << 1.0, 2.0;
    Vec m = edge_conductance_matrix(g, dm, cells);
    long e = g.edge_index(0, 0, 1, 0); // edge at y = 0.2 plane
    double w0 = 0.5 * 0.2 * 0.5, w1 = 0.5 * 0.6 * 0.5; // quarter patches, z half = 0.5
    double expect = (w0 * 1.0 + w1 * 2.0) / 1.0;
    CHECK(m[e] == doctest::Approx(expect).epsilon(1e-14));
    CHECK(dm.dual_facet_area[e] == doctest::Approx(w0 + w1).epsilon(1e-14));
}

TEST_CASE("node capacitance: interior rho c h^3, corner octant, exact sum") {
    double h = 0.25;
    RectilinearGrid g = unit_cube(5);
    DualMeasures dm = dual_measures(g);
    double rc = 3.3e6;
    Vec m = node_capacitance_matrix(g, dm, Vec::Constant(g.cell_count(), rc));
    CHECK(m[g.node_index(2, 2, 2)] == doctest::Approx(rc * h * h * h).epsilon(1e-13));
    CHECK(m[g.node_index(0, 0, 0)] == doctest::Approx(rc * h * h * h / 8.0).epsilon(1e-13));
    CHECK(m.sum() == doctest::Approx(rc).epsilon(1e-12)); // integral over the unit cube

    // piecewise-constant field still integrates exactly
    Vec cells(g.cell_count());
    for (long c = 0; c < g.cell_count(); ++c)
        cells[c] = double(c % 7) + 1.0;
    Vec m2 = node_capacitance_matrix(g, dm, cells);
    double exact = cells.sum() * (h * h * h);
    CHECK(m2.sum() == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("wire mass matrix entries and scaling") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {1, 0, 0});
    Wire1DGrid w = build_wire1d(seg, {0.0, 0.25, 0.5, 0.75, 1.0});
    Vec m = wire_mass_matrix(w, 1.0);
    for (long j = 0; j < m.size(); ++j)
        CHECK(m[j] == doctest::Approx(4.0).epsilon(1e-12));
    Vec m5 = wire_mass_matrix(w, 5.0);
    CHECK((m5 - 5.0 * m).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("wire mass matrix from Bezier arc lengths") {
    WireCurve bez = WireCurve::bezier({0.5, 0.02, 0.02}, {0.5, 0.02, 0.98}, 0.7, {0, 1, 0});
    std::vector<double> s{0.0, 0.4, 1.0};
    Wire1DGrid w = build_wire1d(bez, s);
    auto oracle = arc_lengths(bez, s);
    Vec m = wire_mass_matrix(w, 2.5);
    CHECK(m[0] == doctest::Approx(2.5 / oracle[0]).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(2.5 / oracle[1]).epsilon(1e-12));
}

TEST_CASE("wire beta matrix: dual lengths with halved ends") {
    WireCurve seg = WireCurve::segment({0, 0, 0}, {1, 0, 0});
    Wire1DGrid w = build_wire1d(seg, {0.0, 0.5, 1.0});
    Vec m = wire_beta_matrix(w, 1.0);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(m[2] == doctest::Approx(0.25).epsilon(1e-13));

    CHECK(wire_beta_matrix(w, 0.0).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(wire_beta_matrix(w, 7.0).sum() == doctest::Approx(7.0).epsilon(1e-12));
    CHECK_THROWS(wire_beta_matrix(w, -1.0));
}

TEST_CASE("homogeneous identity: conductance equals dual measure ratio") {
    RectilinearGrid g(Axis1D({0.0, 0.3, 1.0}), Axis1D({0.0, 0.5, 1.0}), Axis1D({0.0, 0.2, 1.0}));
    DualMeasures dm = dual_measures(g);
    Vec m = edge_conductance_matrix(g, dm, Vec::Ones(g.cell_count()));
    for (long e = 0; e < g.edge_count(); ++e)
        CHECK(m[e] ==
              doctest::Approx(dm.dual_facet_area[e] / dm.primal_edge_len[e]).epsilon(1e-13));
}

TEST_CASE("material presets carry the copper constants") {
    MaterialProps cu = material_by_name("copper");
    CHECK(cu.sigma == 5.96e7);
    CHECK(cu.lambda == 401.0);
    CHECK(cu.rho == 8930.0);
    CHECK(cu.c == 390.0);
    CHECK_THROWS(material_by_name("unobtainium"));
}

TEST_CASE("nonpositive conductivity rejected unless the cell is PEC") {
    RectilinearGrid g = unit_cube(3);
    DualMeasures dm = dual_measures(g);
    MaterialField mat = MaterialField::homogeneous(g, 1.0, 1.0, 1.0);
    mat.cell_sigma[3] = 0.0;
    CHECK_THROWS(edge_conductance_matrix(g, dm, mat, Conductivity::Sigma));
    mat.pec_cells[3] = true;
    CHECK_NOTHROW(edge_conductance_matrix(g, dm, mat, Conductivity::Sigma));
}
