#pragma once

#include "wirefit/axis.hpp"
#include "wirefit/types.hpp"

#include <array>

namespace wirefit {

/// Tensor-product rectilinear grid on dual staggered meshes. Nodes, edges,
/// facets and cells are indexed lexicographically, x-fastest; edges and
/// facets are grouped by direction (all x, then y, then z).
class RectilinearGrid {
public:
    RectilinearGrid(Axis1D ax, Axis1D ay, Axis1D az);

    const Axis1D& axis(int d) const { return axes_[static_cast<size_t>(d)]; }
    int points(int d) const { return axes_[static_cast<size_t>(d)].size(); }

    long node_count() const { return n_nodes_; }
    long edge_count() const { return n_edges_; }
    long facet_count() const { return n_facets_; }
    long cell_count() const { return n_cells_; }
    long edge_count_dir(int d) const { return edges_dir_[static_cast<size_t>(d)]; }

    long node_index(int i, int j, int k) const {
        return i + static_cast<long>(points(0)) * (j + static_cast<long>(points(1)) * k);
    }
    std::array<int, 3> node_coords(long idx) const;
    Vec3 node_position(long idx) const;
    Vec3 node_position(int i, int j, int k) const {
        return {axis(0)[i], axis(1)[j], axis(2)[k]};
    }

    /// Edge in direction d starting at node (i,j,k).
    long edge_index(int d, int i, int j, int k) const;
    /// Direction, start-node multi-index and length of an edge.
    struct EdgeInfo {
        int dir;
        std::array<int, 3> start;
        double length;
    };
    EdgeInfo edge_info(long e) const;
    long edge_start_node(long e) const;
    long edge_end_node(long e) const;

    /// Cell index; axes with a single point contribute one unit-extent slab.
    long cell_index(int i, int j, int k) const {
        return i + static_cast<long>(cells_dir(0)) * (j + static_cast<long>(cells_dir(1)) * k);
    }
    int cells_dir(int d) const { return cells_dir_[static_cast<size_t>(d)]; }
    /// Extent of cell interval i along axis d (1 for a degenerate axis).
    double cell_extent(int d, int i) const;

    bool is_boundary_node(long idx) const;
    Vec3 min_corner() const { return {axis(0).front(), axis(1).front(), axis(2).front()}; }
    Vec3 max_corner() const { return {axis(0).back(), axis(1).back(), axis(2).back()}; }
    bool inside(const Vec3& p, double tol) const;

    /// Average primal edge length, optionally restricted to directions
    /// flagged in `dirs`.
    double average_edge_length(std::array<bool, 3> dirs = {true, true, true}) const;
    double max_edge_length_transverse(int wire_dir) const;
    double min_edge_length_transverse(int wire_dir) const;

    /// Snap tolerance used when points are inserted or matched against
    /// this grid (1e-12 times the largest extent).
    double snap_tol() const { return snap_tol_; }

private:
    std::array<Axis1D, 3> axes_;
    std::array<long, 3> edges_dir_;
    std::array<long, 3> edge_offset_;
    std::array<int, 3> cells_dir_;
    long n_nodes_, n_edges_, n_facets_, n_cells_;
    double snap_tol_;
};

/// Per-edge and per-node dual measures plus the boundary areas of the
/// augmented dual grid.
struct DualMeasures {
    Vec dual_facet_area;   // per primal edge |A~_l|
    Vec primal_edge_len;   // per primal edge |L_l|
    Vec dual_volume;       // per primal node |V~_k|
    Vec boundary_dual_area; // per node |dV~_k n dD|, zero for interior nodes
};

/// Primal node-to-edge incidence matrix: one -1 (start) and one +1 (end)
/// per row, edges oriented along the positive coordinate direction.
SpMat build_gradient(const RectilinearGrid& grid);

DualMeasures dual_measures(const RectilinearGrid& grid);

/// Globally graded grid: every axis carries the layer rule toward x0's
/// coordinate; for a centered x0, mu = 1 gives the equidistant grid with
/// the same number of points.
RectilinearGrid build_global_graded(const Vec3& lo, const Vec3& hi, const Vec3& x0, int layers,
                                    double mu);

} // namespace wirefit
