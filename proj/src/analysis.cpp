#include "wirefit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wirefit {

Vec omega_dual_volumes(const RectilinearGrid& grid, const Box& omega) {
    Vec v = Vec::Zero(grid.node_count());
    double tol = grid.snap_tol();
    for (long n = 0; n < grid.node_count(); ++n) {
        auto c = grid.node_coords(n);
        double vol = 1.0;
        for (int d = 0; d < 3; ++d) {
            const Axis1D& ax = grid.axis(d);
            int i = c[static_cast<size_t>(d)];
            if (ax.size() == 1) {
                vol *= 1.0;
                continue;
            }
            double lo = (i > 0) ? ax[i] - 0.5 * ax.interval(i - 1) : ax[i];
            double hi = (i < ax.intervals()) ? ax[i] + 0.5 * ax.interval(i) : ax[i];
            lo = std::max(lo, omega.lo[d]);
            hi = std::min(hi, omega.hi[d]);
            vol *= std::max(hi - lo, 0.0);
        }
        Vec3 p = grid.node_position(n);
        v[n] = omega.contains(p, tol) ? vol : 0.0;
    }
    return v;
}

NormWeights make_norm_weights(const RectilinearGrid& grid, const Box& omega,
                              const Wire1DGrid& wire) {
    NormWeights w;
    w.d_vtilde = omega_dual_volumes(grid, omega);
    w.d_s_bar = Eigen::Map<const Vec>(wire.element_arclen.data(),
                                      static_cast<long>(wire.element_arclen.size()));
    w.d_stilde_bar =
        Eigen::Map<const Vec>(wire.dual_len.data(), static_cast<long>(wire.dual_len.size()));
    return w;
}

double norm_1d_l2(const Vec& u_bar, const Vec& d_stilde_bar) {
    if (u_bar.size() != d_stilde_bar.size())
        throw std::invalid_argument("norm_1d_l2: dimension mismatch");
    return std::sqrt(u_bar.dot(d_stilde_bar.cwiseProduct(u_bar)));
}

double norm_1d_h1semi(const Vec& u_bar, const SpMat& Ps, const Vec& d_s_bar) {
    if (Ps.cols() != u_bar.size() || Ps.rows() != d_s_bar.size())
        throw std::invalid_argument("norm_1d_h1semi: dimension mismatch");
    Vec du = Ps * u_bar;
    return std::sqrt(du.dot(du.cwiseQuotient(d_s_bar)));
}

double norm_3d_l2(const Vec& u, const Vec& d_vtilde_omega) {
    if (u.size() != d_vtilde_omega.size())
        throw std::invalid_argument("norm_3d_l2: dimension mismatch");
    return std::sqrt(u.dot(d_vtilde_omega.cwiseProduct(u)));
}

namespace {
double weighted_rel(const Vec& diff, const Vec& ref, const Vec& weights) {
    double denom = std::sqrt(ref.dot(weights.cwiseProduct(ref)));
    if (denom == 0.0)
        throw std::runtime_error("error measure: reference norm is zero");
    return std::sqrt(diff.dot(weights.cwiseProduct(diff))) / denom;
}
} // namespace

double error_eps(const Vec& u_h, const Vec& u_exact, const Vec& weights) {
    return weighted_rel(u_h - u_exact, u_exact, weights);
}

double error_eps_h1(const Vec& u_h, const Vec& u_exact, const SpMat& Ps, const Vec& d_s_bar) {
    double denom = norm_1d_h1semi(u_exact, Ps, d_s_bar);
    if (denom == 0.0)
        throw std::runtime_error("error_eps_h1: reference seminorm is zero");
    return norm_1d_h1semi(u_h - u_exact, Ps, d_s_bar) / denom;
}

double error_delta(double norm_h, double norm_exact) {
    if (norm_exact == 0.0)
        throw std::runtime_error("error_delta: reference norm is zero");
    return std::abs(norm_h - norm_exact) / norm_exact;
}

double error_Delta(const Vec& u_h, const Vec& u_ref_on_coarse, const Vec& weights) {
    double ref = std::sqrt(u_ref_on_coarse.dot(weights.cwiseProduct(u_ref_on_coarse)));
    if (ref == 0.0)
        throw std::runtime_error("error_Delta: reference norm is zero");
    double num = std::sqrt(u_h.dot(weights.cwiseProduct(u_h)));
    return std::abs(num - ref) / ref;
}

double error_Delta_h1(const Vec& u_h, const Vec& u_ref_on_coarse, const SpMat& Ps,
                      const Vec& d_s_bar) {
    double ref = norm_1d_h1semi(u_ref_on_coarse, Ps, d_s_bar);
    if (ref == 0.0)
        throw std::runtime_error("error_Delta_h1: reference seminorm is zero");
    return std::abs(norm_1d_h1semi(u_h, Ps, d_s_bar) - ref) / ref;
}

double analytic_log2d(double r, double I0_prime, double sigma, double r0) {
    if (!(r > 0.0))
        throw std::invalid_argument("analytic_log2d: field is singular at r = 0");
    return -I0_prime / (2.0 * M_PI * sigma) * std::log(r / r0);
}

double analytic_rint(double sigma, double r_bar, double r0) {
    return std::log(r0 / r_bar) / (2.0 * M_PI * sigma);
}

double StraightWireSolution::phi(double r, double z) const {
    double Iz = I0_prime * z / d;
    if (!(r > 0.0))
        throw std::invalid_argument("StraightWireSolution: field is singular at r = 0");
    return -Iz / (2.0 * M_PI * sigma) * std::log(r / r0);
}

double StraightWireSolution::phi_bar(double z) const {
    double Iz = I0_prime * z / d;
    return -Iz / (2.0 * M_PI * sigma) * std::log(r_bar / r0);
}

double StraightWireSolution::phi_bar_l2_norm() const {
    // phi_bar = c z/d with arc length z in [0, d]
    double c = -I0_prime / (2.0 * M_PI * sigma) * std::log(r_bar / r0);
    return std::abs(c) * std::sqrt(d / 3.0);
}

double StraightWireSolution::phi_bar_h1_seminorm() const {
    double c = -I0_prime / (2.0 * M_PI * sigma) * std::log(r_bar / r0);
    return std::abs(c) / std::sqrt(d);
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 3)
        throw std::invalid_argument("fit_order: need at least three (h, err) pairs");
    for (size_t i = 0; i < h.size(); ++i)
        if (!(h[i] > 0.0) || !(err[i] > 0.0))
            throw std::invalid_argument("fit_order: entries must be positive");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    OrderFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (size_t i = 1; i < h.size(); ++i)
        fit.local.push_back(std::log(err[i] / err[i - 1]) / std::log(h[i] / h[i - 1]));
    return fit;
}

Vec interpolate_to_grid(const RectilinearGrid& fine, const Vec& u_fine,
                        const RectilinearGrid& coarse) {
    Vec out(coarse.node_count());
    for (long n = 0; n < coarse.node_count(); ++n) {
        double v = 0.0;
        for (auto& [col, w] : trilinear_row(fine, coarse.node_position(n)))
            v += w * u_fine[col];
        out[n] = v;
    }
    return out;
}

Vec interpolate_1d(const std::vector<double>& s_fine, const Vec& u_fine,
                   const std::vector<double>& s_coarse) {
    Vec out(static_cast<long>(s_coarse.size()));
    for (size_t i = 0; i < s_coarse.size(); ++i) {
        double s = s_coarse[i];
        auto it = std::upper_bound(s_fine.begin(), s_fine.end(), s);
        int k = static_cast<int>(it - s_fine.begin()) - 1;
        k = std::clamp(k, 0, static_cast<int>(s_fine.size()) - 2);
        double t = (s - s_fine[static_cast<size_t>(k)]) /
                   (s_fine[static_cast<size_t>(k) + 1] - s_fine[static_cast<size_t>(k)]);
        out[static_cast<long>(i)] =
            (1.0 - t) * u_fine[k] + t * u_fine[k + 1];
    }
    return out;
}

} // namespace wirefit
