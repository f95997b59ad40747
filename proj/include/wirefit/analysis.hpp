#pragma once

#include "wirefit/coupling.hpp"
#include "wirefit/wire1d.hpp"

#include <string>
#include <vector>

namespace wirefit {

/// Diagonal weights of the discrete norms: dual volumes clipped to the
/// evaluation box (zero outside), 1D element lengths and 1D dual lengths.
struct NormWeights {
    Vec d_vtilde;     // per node, Omega-clipped dual volume
    Vec d_s_bar;      // per 1D element |L_j|
    Vec d_stilde_bar; // per 1D node |L~_j|
};

/// Axis-aligned box.
struct Box {
    Vec3 lo, hi;
    bool contains(const Vec3& p, double tol) const {
        for (int d = 0; d < 3; ++d)
            if (p[d] < lo[d] - tol || p[d] > hi[d] + tol)
                return false;
        return true;
    }
};

/// Dual volumes clipped to omega; omega faces should be grid planes so the
/// clipped volumes partition the box exactly.
Vec omega_dual_volumes(const RectilinearGrid& grid, const Box& omega);

NormWeights make_norm_weights(const RectilinearGrid& grid, const Box& omega,
                              const Wire1DGrid& wire);

double norm_1d_l2(const Vec& u_bar, const Vec& d_stilde_bar);
/// sqrt(ubar^T Ps^T D_S^-1 Ps ubar)
double norm_1d_h1semi(const Vec& u_bar, const SpMat& Ps, const Vec& d_s_bar);
double norm_3d_l2(const Vec& u, const Vec& d_vtilde_omega);

/// epsilon: relative discrete-norm error against the exact solution
/// sampled on the same grid.
double error_eps(const Vec& u_h, const Vec& u_exact, const Vec& weights);
double error_eps_h1(const Vec& u_h, const Vec& u_exact, const SpMat& Ps, const Vec& d_s_bar);

/// delta: relative mismatch between the discrete norm and the continuous
/// norm of the exact solution.
double error_delta(double norm_h, double norm_exact);

/// Delta: relative mismatch between the discrete norms of a coarse
/// solution and a fine reference carried to the coarse grid.
double error_Delta(const Vec& u_h, const Vec& u_ref_on_coarse, const Vec& weights);
double error_Delta_h1(const Vec& u_h, const Vec& u_ref_on_coarse, const SpMat& Ps,
                      const Vec& d_s_bar);

/// Closed forms of the elliptic references: the radial log potential, the
/// internal per-unit-length resistance and the straight-wire pair.
double analytic_log2d(double r, double I0_prime, double sigma, double r0);
double analytic_rint(double sigma, double r_bar, double r0);
struct StraightWireSolution {
    double I0_prime, sigma, r0, r_bar, d;
    double phi(double r, double z) const;   // 3D field, r > 0
    double phi_bar(double z) const;         // 1D field
    double phi_bar_l2_norm() const;         // continuous L2 norm over arc length
    double phi_bar_h1_seminorm() const;
};

/// Least-squares slope of log(err) against log(h) plus the pairwise local
/// orders.
struct OrderFit {
    double slope = 0.0;
    std::vector<double> local;
};
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err);

/// Trilinear sampling of a fine-grid nodal field at coarse-grid nodes.
Vec interpolate_to_grid(const RectilinearGrid& fine, const Vec& u_fine,
                        const RectilinearGrid& coarse);

/// Linear-in-s sampling of a fine 1D field at coarse s-nodes.
Vec interpolate_1d(const std::vector<double>& s_fine, const Vec& u_fine,
                   const std::vector<double>& s_coarse);

} // namespace wirefit
