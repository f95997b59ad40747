#pragma once

#include <vector>

namespace wirefit {

/// One coordinate axis of a tensor-product grid. Coordinates are strictly
/// increasing; a single-point axis is the degenerate case used by the 2D
/// (single z-plane) assembly.
class Axis1D {
public:
    Axis1D() = default;
    explicit Axis1D(std::vector<double> coords);

    const std::vector<double>& coords() const { return coords_; }
    int size() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
    double front() const { return coords_.front(); }
    double back() const { return coords_.back(); }
    double extent() const { return coords_.back() - coords_.front(); }

    /// Number of intervals; 0 for a single-point axis.
    int intervals() const { return size() - 1; }
    double interval(int i) const { return coords_[static_cast<size_t>(i) + 1] - coords_[static_cast<size_t>(i)]; }

    /// Half-interval sum around point i, clipped at the axis ends.
    /// A single-point axis reports unit extent (per-unit-length convention).
    double dual_extent(int i) const;

    /// Insert points, deduplicating against existing coordinates within
    /// the snap tolerance. Returns the number of points actually added.
    int insert(const std::vector<double>& points, double snap_tol);

    /// True if some coordinate lies within snap_tol of x.
    bool contains(double x, double snap_tol) const;

    /// Index of the interval containing x (clamped to valid range).
    int find_interval(double x) const;

private:
    std::vector<double> coords_;
};

/// Refinement layer radii r_i = b*(i/N)^(1/mu), i = 0..N.
/// mu = 1 is equidistant, mu -> 0 grades toward the singular point.
std::vector<double> grade_layers(double b, int layers, double mu);

/// Uniform axis with n points on [lo, hi].
Axis1D uniform_axis(double lo, double hi, int n);

/// Insert 2*N mirrored grading layers x0 +- r_i around an existing axis
/// point x0. No other prior point may fall inside (x0-b, x0+b).
Axis1D refine_axis_local(const Axis1D& axis, double x0, double b, int layers, double mu,
                         double snap_tol);

/// Graded axis on [lo, hi] toward x0: each side carries N layers of the
/// grading rule with b = distance to its end, giving 2*N+1 points. For a
/// centered x0 and mu = 1 this is the equidistant axis.
Axis1D graded_axis(double lo, double hi, double x0, int layers, double mu);

} // namespace wirefit
