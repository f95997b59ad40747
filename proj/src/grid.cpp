#include "wirefit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wirefit {

RectilinearGrid::RectilinearGrid(Axis1D ax, Axis1D ay, Axis1D az)
    : axes_{std::move(ax), std::move(ay), std::move(az)} {
    long nx = points(0), ny = points(1), nz = points(2);
    n_nodes_ = nx * ny * nz;
    edges_dir_ = {(nx - 1) * ny * nz, nx * (ny - 1) * nz, nx * ny * (nz - 1)};
    edge_offset_ = {0, edges_dir_[0], edges_dir_[0] + edges_dir_[1]};
    n_edges_ = edges_dir_[0] + edges_dir_[1] + edges_dir_[2];
    n_facets_ = nx * (ny - 1) * (nz - 1) + (nx - 1) * ny * (nz - 1) + (nx - 1) * (ny - 1) * nz;
    n_cells_ = (nx - 1) * (ny - 1) * (nz - 1);
    for (int d = 0; d < 3; ++d)
        cells_dir_[static_cast<size_t>(d)] = std::max(points(d) - 1, 1);
    double ext = std::max({axes_[0].extent(), axes_[1].extent(), axes_[2].extent()});
    snap_tol_ = 1e-12 * (ext > 0.0 ? ext : 1.0);
}

std::array<int, 3> RectilinearGrid::node_coords(long idx) const {
    int nx = points(0), ny = points(1);
    int i = static_cast<int>(idx % nx);
    int j = static_cast<int>((idx / nx) % ny);
    int k = static_cast<int>(idx / (static_cast<long>(nx) * ny));
    return {i, j, k};
}

Vec3 RectilinearGrid::node_position(long idx) const {
    auto c = node_coords(idx);
    return node_position(c[0], c[1], c[2]);
}

long RectilinearGrid::edge_index(int d, int i, int j, int k) const {
    long n0 = (d == 0) ? points(0) - 1 : points(0);
    long n1 = (d == 1) ? points(1) - 1 : points(1);
    return edge_offset_[static_cast<size_t>(d)] + i + n0 * (j + n1 * k);
}

RectilinearGrid::EdgeInfo RectilinearGrid::edge_info(long e) const {
    int d = (e < edge_offset_[1]) ? 0 : (e < edge_offset_[2] ? 1 : 2);
    long local = e - edge_offset_[static_cast<size_t>(d)];
    long n0 = (d == 0) ? points(0) - 1 : points(0);
    long n1 = (d == 1) ? points(1) - 1 : points(1);
    int i = static_cast<int>(local % n0);
    int j = static_cast<int>((local / n0) % n1);
    int k = static_cast<int>(local / (n0 * n1));
    std::array<int, 3> start{i, j, k};
    double len = axis(d).interval(start[static_cast<size_t>(d)]);
    return {d, start, len};
}

long RectilinearGrid::edge_start_node(long e) const {
    auto info = edge_info(e);
    return node_index(info.start[0], info.start[1], info.start[2]);
}

long RectilinearGrid::edge_end_node(long e) const {
    auto info = edge_info(e);
    auto s = info.start;
    s[static_cast<size_t>(info.dir)] += 1;
    return node_index(s[0], s[1], s[2]);
}

double RectilinearGrid::cell_extent(int d, int i) const {
    if (axis(d).size() == 1)
        return 1.0;
    return axis(d).interval(i);
}

bool RectilinearGrid::is_boundary_node(long idx) const {
    auto c = node_coords(idx);
    for (int d = 0; d < 3; ++d) {
        if (points(d) == 1)
            continue;
        if (c[static_cast<size_t>(d)] == 0 || c[static_cast<size_t>(d)] == points(d) - 1)
            return true;
    }
    return false;
}

bool RectilinearGrid::inside(const Vec3& p, double tol) const {
    for (int d = 0; d < 3; ++d) {
        if (p[d] < axis(d).front() - tol || p[d] > axis(d).back() + tol)
            return false;
    }
    return true;
}

double RectilinearGrid::average_edge_length(std::array<bool, 3> dirs) const {
    double total = 0.0;
    long count = 0;
    for (int d = 0; d < 3; ++d) {
        if (!dirs[static_cast<size_t>(d)] || axis(d).size() < 2)
            continue;
        long per_line = edges_dir_[static_cast<size_t>(d)] / axis(d).intervals();
        for (int i = 0; i < axis(d).intervals(); ++i)
            total += axis(d).interval(i) * double(per_line);
        count += edges_dir_[static_cast<size_t>(d)];
    }
    if (count == 0)
        throw std::runtime_error("average_edge_length: no edges in requested directions");
    return total / double(count);
}

double RectilinearGrid::max_edge_length_transverse(int wire_dir) const {
    double m = 0.0;
    for (int d = 0; d < 3; ++d) {
        if (d == wire_dir || axis(d).size() < 2)
            continue;
        for (int i = 0; i < axis(d).intervals(); ++i)
            m = std::max(m, axis(d).interval(i));
    }
    return m;
}

double RectilinearGrid::min_edge_length_transverse(int wire_dir) const {
    double m = std::numeric_limits<double>::max();
    for (int d = 0; d < 3; ++d) {
        if (d == wire_dir || axis(d).size() < 2)
            continue;
        for (int i = 0; i < axis(d).intervals(); ++i)
            m = std::min(m, axis(d).interval(i));
    }
    return m;
}

SpMat build_gradient(const RectilinearGrid& grid) {
    SpMat G(grid.edge_count(), grid.node_count());
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(2 * grid.edge_count()));
    for (long e = 0; e < grid.edge_count(); ++e) {
        trips.emplace_back(e, grid.edge_start_node(e), -1.0);
        trips.emplace_back(e, grid.edge_end_node(e), 1.0);
    }
    G.setFromTriplets(trips.begin(), trips.end());
    return G;
}

DualMeasures dual_measures(const RectilinearGrid& grid) {
    DualMeasures dm;
    dm.dual_facet_area.resize(grid.edge_count());
    dm.primal_edge_len.resize(grid.edge_count());
    dm.dual_volume.resize(grid.node_count());
    dm.boundary_dual_area = Vec::Zero(grid.node_count());

    for (long e = 0; e < grid.edge_count(); ++e) {
        auto info = grid.edge_info(e);
        int t1 = (info.dir + 1) % 3, t2 = (info.dir + 2) % 3;
        dm.primal_edge_len[e] = info.length;
        dm.dual_facet_area[e] = grid.axis(t1).dual_extent(info.start[static_cast<size_t>(t1)]) *
                                grid.axis(t2).dual_extent(info.start[static_cast<size_t>(t2)]);
    }

    for (long n = 0; n < grid.node_count(); ++n) {
        auto c = grid.node_coords(n);
        double v = 1.0;
        for (int d = 0; d < 3; ++d)
            v *= grid.axis(d).dual_extent(c[static_cast<size_t>(d)]);
        dm.dual_volume[n] = v;

        // augmented dual boundary facets: one patch per domain face the
        // node lies on
        for (int d = 0; d < 3; ++d) {
            if (grid.points(d) == 1)
                continue;
            int ci = c[static_cast<size_t>(d)];
            if (ci != 0 && ci != grid.points(d) - 1)
                continue;
            int t1 = (d + 1) % 3, t2 = (d + 2) % 3;
            dm.boundary_dual_area[n] += grid.axis(t1).dual_extent(c[static_cast<size_t>(t1)]) *
                                        grid.axis(t2).dual_extent(c[static_cast<size_t>(t2)]);
        }
    }
    return dm;
}

RectilinearGrid build_global_graded(const Vec3& lo, const Vec3& hi, const Vec3& x0, int layers,
                                    double mu) {
    return RectilinearGrid(graded_axis(lo.x, hi.x, x0.x, layers, mu),
                           graded_axis(lo.y, hi.y, x0.y, layers, mu),
                           graded_axis(lo.z, hi.z, x0.z, layers, mu));
}

} // namespace wirefit
