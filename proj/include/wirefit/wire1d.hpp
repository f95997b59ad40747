#pragma once

#include "wirefit/curve.hpp"

#include <vector>

namespace wirefit {

/// 1D partition of the wire parameter interval [0,1] with the metric
/// element and dual lengths in meters.
struct Wire1DGrid {
    std::vector<double> s_nodes;        // strictly increasing, 0 .. 1
    std::vector<double> element_arclen; // |L_j| per element, size n-1
    std::vector<double> dual_len;       // |L~_j| per node, half of adjacent elements

    int node_count() const { return static_cast<int>(s_nodes.size()); }
    int element_count() const { return static_cast<int>(element_arclen.size()); }
    double total_length() const;
};

/// Partition with the given s-nodes; arc lengths from quadrature on the
/// curve. s must start at 0, end at 1 and be strictly increasing.
Wire1DGrid build_wire1d(const WireCurve& curve, const std::vector<double>& s_nodes);

/// Equidistant parameter nodes, n >= 2.
std::vector<double> equidistant_s(int n);

} // namespace wirefit
