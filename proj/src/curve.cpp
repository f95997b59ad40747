#include "wirefit/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace wirefit {

WireCurve WireCurve::segment(const Vec3& a, const Vec3& b) {
    if ((b - a).norm() == 0.0)
        throw std::invalid_argument("WireCurve::segment: endpoints coincide");
    WireCurve c;
    c.kind_ = Kind::Segment;
    c.pos_ = [a, b](double s) { return a + (b - a) * s; };
    c.d1_ = [a, b](double) { return b - a; };
    c.d2_ = [](double) { return Vec3{0, 0, 0}; };
    return c;
}

WireCurve WireCurve::bezier(const Vec3& a, const Vec3& b, double height, const Vec3& bend_dir) {
    Vec3 dir = bend_dir.normalized();
    WireCurve c;
    c.kind_ = Kind::QuadraticBezier;
    c.pos_ = [a, b, height, dir](double s) {
        return a + (b - a) * s + dir * (4.0 * height * s * (1.0 - s));
    };
    c.d1_ = [a, b, height, dir](double s) { return (b - a) + dir * (4.0 * height * (1.0 - 2.0 * s)); };
    c.d2_ = [height, dir](double) { return dir * (-8.0 * height); };
    return c;
}

WireCurve WireCurve::custom(std::function<Vec3(double)> pos, std::function<Vec3(double)> d1,
                            std::function<Vec3(double)> d2) {
    WireCurve c;
    c.kind_ = Kind::Custom;
    c.pos_ = std::move(pos);
    c.d1_ = std::move(d1);
    c.d2_ = std::move(d2);
    return c;
}

namespace {

// 7-point Gauss-Legendre on [a,b]
double gauss7(const WireCurve& curve, double a, double b) {
    static const double xs[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                 0.0,                 0.4058451513773972,  0.7415311855993945,
                                 0.9491079123427585};
    static const double ws[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                 0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 7; ++i)
        sum += ws[i] * curve.speed(mid + half * xs[i]);
    return sum * half;
}

double adaptive(const WireCurve& curve, double a, double b, double whole, double tol, int depth) {
    double mid = 0.5 * (a + b);
    double left = gauss7(curve, a, mid);
    double right = gauss7(curve, mid, b);
    if (depth > 30 || std::abs(left + right - whole) <= tol * std::abs(whole) + 1e-300)
        return left + right;
    return adaptive(curve, a, mid, left, tol, depth + 1) +
           adaptive(curve, mid, b, right, tol, depth + 1);
}

double arc_between(const WireCurve& curve, double a, double b) {
    return adaptive(curve, a, b, gauss7(curve, a, b), 1e-10, 0);
}

} // namespace

std::vector<double> arc_lengths(const WireCurve& curve, const std::vector<double>& s_nodes) {
    if (s_nodes.size() < 2)
        throw std::invalid_argument("arc_lengths: need at least two s-nodes");
    std::vector<double> out(s_nodes.size() - 1);
    for (size_t j = 0; j + 1 < s_nodes.size(); ++j)
        out[j] = arc_between(curve, s_nodes[j], s_nodes[j + 1]);
    return out;
}

double arc_length_total(const WireCurve& curve) { return arc_between(curve, 0.0, 1.0); }

std::vector<Frame> rm_frame(const WireCurve& curve, const std::vector<double>& s_nodes) {
    if (s_nodes.empty())
        return {};
    std::vector<Frame> frames(s_nodes.size());

    Vec3 t0 = curve.derivative(s_nodes[0]).normalized();
    // pick the coordinate axis least aligned with the tangent as seed
    Vec3 seed{1, 0, 0};
    if (std::abs(t0.y) < std::abs(t0.x) && std::abs(t0.y) <= std::abs(t0.z))
        seed = {0, 1, 0};
    else if (std::abs(t0.z) < std::abs(t0.x))
        seed = {0, 0, 1};
    Vec3 n1 = (seed - t0 * seed.dot(t0)).normalized();
    frames[0] = {t0, n1, t0.cross(n1)};

    // double-reflection propagation (Wang et al.)
    for (size_t j = 1; j < s_nodes.size(); ++j) {
        Vec3 x0 = curve.position(s_nodes[j - 1]);
        Vec3 x1 = curve.position(s_nodes[j]);
        Vec3 t1 = curve.derivative(s_nodes[j]).normalized();
        Vec3 v1 = x1 - x0;
        double c1 = v1.dot(v1);
        Vec3 rL, tL;
        if (c1 < 1e-300) {
            rL = frames[j - 1].n1;
            tL = frames[j - 1].tangent;
        } else {
            rL = frames[j - 1].n1 - v1 * (2.0 / c1 * v1.dot(frames[j - 1].n1));
            tL = frames[j - 1].tangent - v1 * (2.0 / c1 * v1.dot(frames[j - 1].tangent));
        }
        Vec3 v2 = t1 - tL;
        double c2 = v2.dot(v2);
        Vec3 r1 = (c2 < 1e-300) ? rL : rL - v2 * (2.0 / c2 * v2.dot(rL));
        r1 = (r1 - t1 * r1.dot(t1)).normalized();
        frames[j] = {t1, r1, t1.cross(r1)};
    }
    return frames;
}

double frenet_curvature_max(const WireCurve& curve, int n_samples) {
    double kmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double s = double(i) / double(n_samples - 1);
        Vec3 d1 = curve.derivative(s);
        Vec3 d2 = curve.second_derivative(s);
        double v = d1.norm();
        if (v == 0.0)
            throw std::invalid_argument("frenet_curvature_max: curve is not regular");
        kmax = std::max(kmax, d1.cross(d2).norm() / (v * v * v));
    }
    return kmax;
}

} // namespace wirefit
