#include "wirefit/wire1d.hpp"

#include <numeric>
#include <stdexcept>

namespace wirefit {

double Wire1DGrid::total_length() const {
    return std::accumulate(element_arclen.begin(), element_arclen.end(), 0.0);
}

Wire1DGrid build_wire1d(const WireCurve& curve, const std::vector<double>& s_nodes) {
    if (s_nodes.size() < 2)
        throw std::invalid_argument("build_wire1d: need at least two s-nodes");
    if (s_nodes.front() != 0.0 || s_nodes.back() != 1.0)
        throw std::invalid_argument("build_wire1d: s-nodes must span [0, 1]");
    for (size_t i = 1; i < s_nodes.size(); ++i)
        if (!(s_nodes[i] > s_nodes[i - 1]))
            throw std::invalid_argument("build_wire1d: s-nodes must be strictly increasing");

    Wire1DGrid w;
    w.s_nodes = s_nodes;
    w.element_arclen = arc_lengths(curve, s_nodes);
    w.dual_len.assign(s_nodes.size(), 0.0);
    for (size_t j = 0; j < w.element_arclen.size(); ++j) {
        w.dual_len[j] += 0.5 * w.element_arclen[j];
        w.dual_len[j + 1] += 0.5 * w.element_arclen[j];
    }
    return w;
}

std::vector<double> equidistant_s(int n) {
    if (n < 2)
        throw std::invalid_argument("equidistant_s: need at least two nodes");
    std::vector<double> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        s[static_cast<size_t>(i)] = double(i) / double(n - 1);
    s.front() = 0.0;
    s.back() = 1.0;
    return s;
}

} // namespace wirefit
