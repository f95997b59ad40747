#include "wirefit/materials.hpp"

#include <stdexcept>

namespace wirefit {

MaterialField MaterialField::homogeneous(const RectilinearGrid& grid, double sigma, double lambda,
                                         double rho_c) {
    long nc = static_cast<long>(grid.cells_dir(0)) * grid.cells_dir(1) * grid.cells_dir(2);
    MaterialField m;
    m.cell_sigma = Vec::Constant(nc, sigma);
    m.cell_lambda = Vec::Constant(nc, lambda);
    m.cell_rho_c = Vec::Constant(nc, rho_c);
    m.pec_cells.assign(static_cast<size_t>(nc), false);
    return m;
}

MaterialProps material_by_name(const std::string& name) {
    if (name == "copper")
        return {5.96e7, 401.0, 8930.0, 390.0};
    throw std::invalid_argument("material_by_name: unknown material '" + name + "'");
}

namespace {

// quarter-patch extents of the two transverse axes around index i
inline void half_parts(const Axis1D& axis, int i, double parts[2], int cells[2], int& count) {
    count = 0;
    if (axis.size() == 1) { // degenerate axis: one unit slab
        parts[count] = 1.0;
        cells[count++] = 0;
        return;
    }
    if (i > 0) {
        parts[count] = 0.5 * axis.interval(i - 1);
        cells[count++] = i - 1;
    }
    if (i < axis.intervals()) {
        parts[count] = 0.5 * axis.interval(i);
        cells[count++] = i;
    }
}

} // namespace

Vec edge_conductance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const Vec& cellvals) {
    Vec m(grid.edge_count());
    for (long e = 0; e < grid.edge_count(); ++e) {
        auto info = grid.edge_info(e);
        int t1 = (info.dir + 1) % 3, t2 = (info.dir + 2) % 3;
        double p1[2], p2[2];
        int c1[2], c2[2], n1, n2;
        half_parts(grid.axis(t1), info.start[static_cast<size_t>(t1)], p1, c1, n1);
        half_parts(grid.axis(t2), info.start[static_cast<size_t>(t2)], p2, c2, n2);
        double wsum = 0.0, asum = 0.0;
        std::array<int, 3> cidx;
        cidx[static_cast<size_t>(info.dir)] = info.start[static_cast<size_t>(info.dir)];
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n2; ++b) {
                cidx[static_cast<size_t>(t1)] = c1[a];
                cidx[static_cast<size_t>(t2)] = c2[b];
                double w = p1[a] * p2[b];
                wsum += w;
                asum += w * cellvals[grid.cell_index(cidx[0], cidx[1], cidx[2])];
            }
        // alpha_avg * |A~_l| / |L_l| with |A~_l| = wsum
        m[e] = asum / dual.primal_edge_len[e];
        (void)wsum;
    }
    return m;
}

Vec edge_conductance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const MaterialField& mat, Conductivity which) {
    const Vec& vals = (which == Conductivity::Sigma) ? mat.cell_sigma : mat.cell_lambda;
    for (long c = 0; c < vals.size(); ++c)
        if (!(vals[c] > 0.0) && !mat.pec_cells[static_cast<size_t>(c)])
            throw std::invalid_argument("edge_conductance_matrix: nonpositive conductivity in "
                                        "non-PEC cell");
    return edge_conductance_matrix(grid, dual, vals);
}

Vec node_capacitance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const Vec& cell_rho_c) {
    (void)dual;
    Vec m(grid.node_count());
    for (long n = 0; n < grid.node_count(); ++n) {
        auto nc = grid.node_coords(n);
        double px[2], py[2], pz[2];
        int cx[2], cy[2], cz[2], nx, ny, nz;
        half_parts(grid.axis(0), nc[0], px, cx, nx);
        half_parts(grid.axis(1), nc[1], py, cy, ny);
        half_parts(grid.axis(2), nc[2], pz, cz, nz);
        double sum = 0.0;
        for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b)
                for (int c = 0; c < nz; ++c)
                    sum += px[a] * py[b] * pz[c] * cell_rho_c[grid.cell_index(cx[a], cy[b], cz[c])];
        m[n] = sum;
    }
    return m;
}

Vec wire_mass_matrix(const Wire1DGrid& wire, const Vec& alpha_bar) {
    if (alpha_bar.size() != wire.element_count())
        throw std::invalid_argument("wire_mass_matrix: coefficient count mismatch");
    Vec m(wire.element_count());
    for (int j = 0; j < wire.element_count(); ++j) {
        if (!(wire.element_arclen[static_cast<size_t>(j)] > 0.0))
            throw std::invalid_argument("wire_mass_matrix: nonpositive element length");
        m[j] = alpha_bar[j] / wire.element_arclen[static_cast<size_t>(j)];
    }
    return m;
}

Vec wire_mass_matrix(const Wire1DGrid& wire, double alpha_bar) {
    return wire_mass_matrix(wire, Vec::Constant(wire.element_count(), alpha_bar));
}

Vec wire_beta_matrix(const Wire1DGrid& wire, const Vec& beta_bar) {
    if (beta_bar.size() != wire.node_count())
        throw std::invalid_argument("wire_beta_matrix: coefficient count mismatch");
    Vec m(wire.node_count());
    for (int j = 0; j < wire.node_count(); ++j) {
        if (beta_bar[j] < 0.0)
            throw std::invalid_argument("wire_beta_matrix: negative transfer coefficient");
        m[j] = beta_bar[j] * wire.dual_len[static_cast<size_t>(j)];
    }
    return m;
}

Vec wire_beta_matrix(const Wire1DGrid& wire, double beta_bar) {
    return wire_beta_matrix(wire, Vec::Constant(wire.node_count(), beta_bar));
}

} // namespace wirefit
