#pragma once

#include "wirefit/types.hpp"

#include <functional>
#include <vector>

namespace wirefit {

/// Regular parametrized curve x(s), s in [0,1]. Factory helpers cover the
/// two shipped kinds (straight segment, quadratic Bezier with a bending
/// height); tests may supply custom evaluators.
class WireCurve {
public:
    enum class Kind { Segment, QuadraticBezier, Custom };

    static WireCurve segment(const Vec3& a, const Vec3& b);
    /// Quadratic Bezier from a to b whose apex rises `height` above the
    /// chord midpoint along `bend_dir`: x(s) = lerp(a,b,s) + 4*H*s*(1-s)*dir.
    static WireCurve bezier(const Vec3& a, const Vec3& b, double height, const Vec3& bend_dir);
    static WireCurve custom(std::function<Vec3(double)> pos, std::function<Vec3(double)> d1,
                            std::function<Vec3(double)> d2);

    Kind kind() const { return kind_; }
    Vec3 position(double s) const { return pos_(s); }
    Vec3 derivative(double s) const { return d1_(s); }
    Vec3 second_derivative(double s) const { return d2_(s); }
    double speed(double s) const { return d1_(s).norm(); }

private:
    WireCurve() = default;
    Kind kind_ = Kind::Custom;
    std::function<Vec3(double)> pos_, d1_, d2_;
};

/// Per-element arc lengths between consecutive s-nodes, adaptive Gauss
/// quadrature of |dx/ds| to 1e-10 relative.
std::vector<double> arc_lengths(const WireCurve& curve, const std::vector<double>& s_nodes);

double arc_length_total(const WireCurve& curve);

/// Orthonormal frames (tangent, n1, n2) at the s-nodes, propagated from
/// s = 0 by the double-reflection method. Rotation-minimizing, so well
/// defined on straight segments and free of inflection flips.
struct Frame {
    Vec3 tangent, n1, n2;
};
std::vector<Frame> rm_frame(const WireCurve& curve, const std::vector<double>& s_nodes);

/// max |x' x x''| / |x'|^3 over a dense sample of [0,1].
double frenet_curvature_max(const WireCurve& curve, int n_samples = 2001);

} // namespace wirefit
