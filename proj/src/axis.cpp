#include "wirefit/axis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wirefit {

Axis1D::Axis1D(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty())
        throw std::invalid_argument("Axis1D: needs at least one coordinate");
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!(coords_[i] > coords_[i - 1]))
            throw std::invalid_argument("Axis1D: coordinates must be strictly increasing");
}

double Axis1D::dual_extent(int i) const {
    if (size() == 1)
        return 1.0;
    double left = (i > 0) ? 0.5 * interval(i - 1) : 0.0;
    double right = (i < intervals()) ? 0.5 * interval(i) : 0.0;
    return left + right;
}

int Axis1D::insert(const std::vector<double>& points, double snap_tol) {
    int added = 0;
    for (double p : points) {
        if (contains(p, snap_tol))
            continue;
        coords_.insert(std::upper_bound(coords_.begin(), coords_.end(), p), p);
        ++added;
    }
    return added;
}

bool Axis1D::contains(double x, double snap_tol) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), x);
    if (it != coords_.end() && std::abs(*it - x) <= snap_tol)
        return true;
    if (it != coords_.begin() && std::abs(*(it - 1) - x) <= snap_tol)
        return true;
    return false;
}

int Axis1D::find_interval(double x) const {
    if (intervals() <= 0)
        return 0;
    auto it = std::upper_bound(coords_.begin(), coords_.end(), x);
    int i = static_cast<int>(it - coords_.begin()) - 1;
    return std::clamp(i, 0, intervals() - 1);
}

std::vector<double> grade_layers(double b, int layers, double mu) {
    if (!(b > 0.0))
        throw std::invalid_argument("grade_layers: b must be positive");
    if (layers < 1)
        throw std::invalid_argument("grade_layers: need at least one layer");
    if (!(mu > 0.0) || mu > 1.0)
        throw std::invalid_argument("grade_layers: grading mu must lie in (0, 1]");
    std::vector<double> r(static_cast<size_t>(layers) + 1);
    for (int i = 0; i <= layers; ++i)
        r[static_cast<size_t>(i)] = b * std::pow(double(i) / double(layers), 1.0 / mu);
    r.front() = 0.0;
    r.back() = b;
    return r;
}

Axis1D uniform_axis(double lo, double hi, int n) {
    if (n < 2)
        throw std::invalid_argument("uniform_axis: need at least two points");
    std::vector<double> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        c[static_cast<size_t>(i)] = lo + (hi - lo) * double(i) / double(n - 1);
    c.front() = lo;
    c.back() = hi;
    return Axis1D(std::move(c));
}

Axis1D refine_axis_local(const Axis1D& axis, double x0, double b, int layers, double mu,
                         double snap_tol) {
    if (!axis.contains(x0, snap_tol))
        throw std::invalid_argument("refine_axis_local: x0 is not an axis point");
    for (double c : axis.coords()) {
        if (std::abs(c - x0) <= snap_tol)
            continue;
        if (c > x0 - b && c < x0 + b)
            throw std::invalid_argument(
                "refine_axis_local: axis point " + std::to_string(c) +
                " lies inside the refinement region (" + std::to_string(x0 - b) + ", " +
                std::to_string(x0 + b) + ")");
    }
    std::vector<double> r = grade_layers(b, layers, mu);
    std::vector<double> pts;
    pts.reserve(2 * static_cast<size_t>(layers));
    for (int i = 1; i <= layers; ++i) {
        pts.push_back(x0 - r[static_cast<size_t>(i)]);
        pts.push_back(x0 + r[static_cast<size_t>(i)]);
    }
    Axis1D out = axis;
    out.insert(pts, snap_tol);
    return out;
}

Axis1D graded_axis(double lo, double hi, double x0, int layers, double mu) {
    if (!(x0 > lo) || !(x0 < hi))
        throw std::invalid_argument("graded_axis: x0 must lie strictly inside [lo, hi]");
    std::vector<double> rl = grade_layers(x0 - lo, layers, mu);
    std::vector<double> rr = grade_layers(hi - x0, layers, mu);
    std::vector<double> c;
    c.reserve(2 * static_cast<size_t>(layers) + 1);
    for (int i = layers; i >= 1; --i)
        c.push_back(x0 - rl[static_cast<size_t>(i)]);
    c.push_back(x0);
    for (int i = 1; i <= layers; ++i)
        c.push_back(x0 + rr[static_cast<size_t>(i)]);
    c.front() = lo;
    c.back() = hi;
    return Axis1D(std::move(c));
}

} // namespace wirefit
