#pragma once

#include "wirefit/grid.hpp"
#include "wirefit/wire1d.hpp"

#include <utility>
#include <vector>

namespace wirefit {

/// Sparse interpolation row over grid nodes: the <= 8 corner hat-function
/// weights of the cell containing p. Weights sum to one; a point on a node
/// yields a single unit entry.
std::vector<std::pair<long, double>> trilinear_row(const RectilinearGrid& grid, const Vec3& p);

/// 1D partial derivative operator, (n1d-1) x n1d bidiagonal -1/+1.
SpMat build_Ps(int n1d);

/// Wire-node sampling matrix R_N, row j = trilinear_row at x(s_j).
SpMat build_RN(const RectilinearGrid& grid, const WireCurve& curve,
               const std::vector<double>& s_nodes);

/// The 3D<->1D operators of one wire.
struct CouplingSet {
    SpMat RN;    // n1d x N_N, trilinear sampling at wire nodes
    SpMat Ps;    // (n1d-1) x n1d
    SpMat X;     // Ps * RN
    SpMat X_avg; // rows = (row_j(RN) + row_{j+1}(RN)) / 2
    SpMat Pi;    // circle-averaged sampling scaled by gamma
    double gamma = 1.0;
    double r_cpl = 0.0;
};

/// Circle-averaged coupling operator. gamma = log(r_bar/r0)/log(r_cpl/r0);
/// r_cpl = 0 degenerates to Pi = R_N with gamma = 1. Circle orientation
/// comes from the rotation-minimizing frames; theta0 rotates the
/// quadrature points (theta0 = pi/4 with n_theta = 4 samples the cell
/// diagonals, where the leading interpolation error of a harmonic field
/// cancels on locally symmetric tensor grids).
std::pair<SpMat, double> build_Pi(const RectilinearGrid& grid, const WireCurve& curve,
                                  const std::vector<double>& s_nodes, double r_cpl, double r_bar,
                                  double r_0, int n_theta, double theta0 = 0.0);

/// All operators for one wire.
CouplingSet build_coupling(const RectilinearGrid& grid, const WireCurve& curve,
                           const std::vector<double>& s_nodes, double r_cpl, double r_bar,
                           double r_0, int n_theta, double theta0 = 0.0);

/// Degenerate 0D coupling for a single point (the 2D resistor case): the
/// averaging circle lies in the xy-plane.
CouplingSet point_coupling(const RectilinearGrid& grid, const Vec3& p, double r_cpl, double r_bar,
                           double r_0, int n_theta, double theta0 = 0.0);

} // namespace wirefit
