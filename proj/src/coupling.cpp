#include "wirefit/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace wirefit {

namespace {

// per-axis interpolation stencil: one or two (index, weight) pairs
struct AxisWeights {
    int idx[2];
    double w[2];
    int count;
};

AxisWeights axis_weights(const Axis1D& axis, double x, double snap_tol) {
    if (axis.size() == 1) {
        if (std::abs(x - axis[0]) > snap_tol)
            throw std::out_of_range("trilinear_row: point off the degenerate axis plane");
        return {{0, 0}, {1.0, 0.0}, 1};
    }
    if (x < axis.front() - snap_tol || x > axis.back() + snap_tol)
        throw std::out_of_range("trilinear_row: point outside the grid bounding box");
    int i = axis.find_interval(x);
    double t = (x - axis[i]) / axis.interval(i);
    if (std::abs(x - axis[i]) <= snap_tol)
        t = 0.0;
    else if (std::abs(x - axis[i + 1]) <= snap_tol)
        t = 1.0;
    if (t == 0.0)
        return {{i, 0}, {1.0, 0.0}, 1};
    if (t == 1.0)
        return {{i + 1, 0}, {1.0, 0.0}, 1};
    return {{i, i + 1}, {1.0 - t, t}, 2};
}

} // namespace

std::vector<std::pair<long, double>> trilinear_row(const RectilinearGrid& grid, const Vec3& p) {
    double tol = grid.snap_tol();
    AxisWeights aw[3] = {axis_weights(grid.axis(0), p.x, tol),
                         axis_weights(grid.axis(1), p.y, tol),
                         axis_weights(grid.axis(2), p.z, tol)};
    std::vector<std::pair<long, double>> row;
    row.reserve(8);
    for (int a = 0; a < aw[0].count; ++a)
        for (int b = 0; b < aw[1].count; ++b)
            for (int c = 0; c < aw[2].count; ++c) {
                double w = aw[0].w[a] * aw[1].w[b] * aw[2].w[c];
                if (w != 0.0)
                    row.emplace_back(grid.node_index(aw[0].idx[a], aw[1].idx[b], aw[2].idx[c]), w);
            }
    return row;
}

SpMat build_Ps(int n1d) {
    if (n1d < 2)
        throw std::invalid_argument("build_Ps: need at least two 1D nodes");
    SpMat P(n1d - 1, n1d);
    std::vector<Triplet> trips;
    trips.reserve(2 * static_cast<size_t>(n1d - 1));
    for (int l = 0; l < n1d - 1; ++l) {
        trips.emplace_back(l, l, -1.0);
        trips.emplace_back(l, l + 1, 1.0);
    }
    P.setFromTriplets(trips.begin(), trips.end());
    return P;
}

SpMat build_RN(const RectilinearGrid& grid, const WireCurve& curve,
               const std::vector<double>& s_nodes) {
    SpMat R(static_cast<long>(s_nodes.size()), grid.node_count());
    std::vector<Triplet> trips;
    for (size_t j = 0; j < s_nodes.size(); ++j) {
        auto row = trilinear_row(grid, curve.position(s_nodes[j]));
        for (auto& [col, w] : row)
            trips.emplace_back(static_cast<long>(j), col, w);
    }
    R.setFromTriplets(trips.begin(), trips.end());
    return R;
}

namespace {

double gamma_factor(double r_cpl, double r_bar, double r_0) {
    if (!(r_bar > 0.0) || !(r_0 > r_bar))
        throw std::invalid_argument("build_Pi: need 0 < r_bar < r_0");
    if (r_cpl < 0.0)
        throw std::invalid_argument("build_Pi: coupling radius must be nonnegative");
    if (r_cpl == 0.0)
        return 1.0;
    if (r_cpl >= r_0)
        throw std::invalid_argument("build_Pi: coupling radius must be below the reference radius");
    return std::log(r_bar / r_0) / std::log(r_cpl / r_0);
}

SpMat circle_rows(const RectilinearGrid& grid, const std::vector<Vec3>& centers,
                  const std::vector<Frame>& frames, double r_cpl, double gamma, int n_theta,
                  double theta0) {
    SpMat Pi(static_cast<long>(centers.size()), grid.node_count());
    std::vector<Triplet> trips;
    const double wq = gamma / double(n_theta);
    for (size_t j = 0; j < centers.size(); ++j) {
        for (int q = 0; q < n_theta; ++q) {
            double th = theta0 + 2.0 * M_PI * double(q) / double(n_theta);
            Vec3 p = centers[j] + r_cpl * (std::cos(th) * frames[j].n1 + std::sin(th) * frames[j].n2);
            for (auto& [col, w] : trilinear_row(grid, p))
                trips.emplace_back(static_cast<long>(j), col, wq * w);
        }
    }
    Pi.setFromTriplets(trips.begin(), trips.end());
    return Pi;
}

} // namespace

std::pair<SpMat, double> build_Pi(const RectilinearGrid& grid, const WireCurve& curve,
                                  const std::vector<double>& s_nodes, double r_cpl, double r_bar,
                                  double r_0, int n_theta, double theta0) {
    double gamma = gamma_factor(r_cpl, r_bar, r_0);
    if (r_cpl == 0.0)
        return {build_RN(grid, curve, s_nodes), gamma};
    if (n_theta < 1)
        throw std::invalid_argument("build_Pi: need at least one quadrature point");
    std::vector<Vec3> centers(s_nodes.size());
    for (size_t j = 0; j < s_nodes.size(); ++j)
        centers[j] = curve.position(s_nodes[j]);
    auto frames = rm_frame(curve, s_nodes);
    return {circle_rows(grid, centers, frames, r_cpl, gamma, n_theta, theta0), gamma};
}

CouplingSet build_coupling(const RectilinearGrid& grid, const WireCurve& curve,
                           const std::vector<double>& s_nodes, double r_cpl, double r_bar,
                           double r_0, int n_theta, double theta0) {
    CouplingSet cs;
    cs.RN = build_RN(grid, curve, s_nodes);
    cs.Ps = build_Ps(static_cast<int>(s_nodes.size()));
    cs.X = cs.Ps * cs.RN;
    SpMat Avg(cs.Ps.rows(), cs.Ps.cols());
    {
        std::vector<Triplet> trips;
        for (int l = 0; l < cs.Ps.rows(); ++l) {
            trips.emplace_back(l, l, 0.5);
            trips.emplace_back(l, l + 1, 0.5);
        }
        Avg.setFromTriplets(trips.begin(), trips.end());
    }
    cs.X_avg = Avg * cs.RN;
    std::tie(cs.Pi, cs.gamma) = build_Pi(grid, curve, s_nodes, r_cpl, r_bar, r_0, n_theta, theta0);
    cs.r_cpl = r_cpl;
    return cs;
}

CouplingSet point_coupling(const RectilinearGrid& grid, const Vec3& p, double r_cpl, double r_bar,
                           double r_0, int n_theta, double theta0) {
    CouplingSet cs;
    cs.RN.resize(1, grid.node_count());
    {
        std::vector<Triplet> trips;
        for (auto& [col, w] : trilinear_row(grid, p))
            trips.emplace_back(0, col, w);
        cs.RN.setFromTriplets(trips.begin(), trips.end());
    }
    cs.Ps.resize(0, 1);
    cs.X.resize(0, grid.node_count());
    cs.X_avg.resize(0, grid.node_count());
    cs.gamma = gamma_factor(r_cpl, r_bar, r_0);
    cs.r_cpl = r_cpl;
    if (r_cpl == 0.0) {
        cs.Pi = cs.RN;
    } else {
        std::vector<Frame> frames{{Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}};
        cs.Pi = circle_rows(grid, {p}, frames, r_cpl, cs.gamma, n_theta, theta0);
    }
    return cs;
}

} // namespace wirefit
