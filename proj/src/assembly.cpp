#include "wirefit/assembly.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace wirefit {

Vec ReducedSystem::expand(const Vec& x_active) const {
    Vec full = prescribed;
    for (size_t a = 0; a < active_to_full.size(); ++a)
        full[active_to_full[a]] = x_active[static_cast<long>(a)];
    return full;
}

Vec ReducedSystem::restrict_to_active(const Vec& x_full) const {
    Vec xa(static_cast<long>(active_to_full.size()));
    for (size_t a = 0; a < active_to_full.size(); ++a)
        xa[static_cast<long>(a)] = x_full[active_to_full[a]];
    return xa;
}

Vec PecReduction::expand(const Vec& x_merged) const {
    Vec full(static_cast<long>(node_to_unknown.size()));
    for (size_t n = 0; n < node_to_unknown.size(); ++n)
        full[static_cast<long>(n)] = x_merged[node_to_unknown[n]];
    return full;
}

SpMat bulk_stiffness(const SpMat& G, const Vec& m_alpha) {
    if (G.rows() != m_alpha.size())
        throw std::invalid_argument("bulk_stiffness: edge count mismatch");
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(4 * G.rows()));
    // column-major storage: collect the -1/+1 endpoints per edge row first
    std::vector<long> start(static_cast<size_t>(G.rows()), -1), end(static_cast<size_t>(G.rows()), -1);
    for (int c = 0; c < G.outerSize(); ++c)
        for (SpMat::InnerIterator it(G, c); it; ++it) {
            if (it.value() < 0)
                start[static_cast<size_t>(it.row())] = it.col();
            else
                end[static_cast<size_t>(it.row())] = it.col();
        }
    for (long e = 0; e < G.rows(); ++e) {
        long a = start[static_cast<size_t>(e)], b = end[static_cast<size_t>(e)];
        if (a < 0 || b < 0)
            throw std::invalid_argument("bulk_stiffness: incidence row without -1/+1 pair");
        double g = m_alpha[e];
        trips.emplace_back(a, a, g);
        trips.emplace_back(b, b, g);
        trips.emplace_back(a, b, -g);
        trips.emplace_back(b, a, -g);
    }
    SpMat K(G.cols(), G.cols());
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
}

SpMat wire_stiffness(const std::vector<CouplingSet>& couplings,
                     const std::vector<Vec>& m_alpha_bar) {
    if (couplings.empty())
        throw std::invalid_argument("wire_stiffness: no wires");
    if (couplings.size() != m_alpha_bar.size())
        throw std::invalid_argument("wire_stiffness: coefficient list mismatch");
    long n = couplings.front().RN.cols();
    SpMat K(n, n);
    for (size_t i = 0; i < couplings.size(); ++i) {
        const CouplingSet& cs = couplings[i];
        if (m_alpha_bar[i].size() != cs.Ps.rows())
            throw std::invalid_argument("wire_stiffness: wire mass dimension mismatch");
        SpMat W = m_alpha_bar[i].asDiagonal() * (cs.Ps * cs.Pi);
        K += SpMat(cs.X.transpose() * W);
    }
    return K;
}

JouleLosses joule_losses(const std::vector<CouplingSet>& couplings,
                         const std::vector<Vec>& m_sigma_bar, const std::vector<Vec>& phi_bar,
                         JouleSpreading spreading) {
    if (couplings.size() != m_sigma_bar.size() || couplings.size() != phi_bar.size())
        throw std::invalid_argument("joule_losses: per-wire list mismatch");
    JouleLosses out;
    out.nodal = Vec::Zero(couplings.empty() ? 0 : couplings.front().RN.cols());
    for (size_t i = 0; i < couplings.size(); ++i) {
        const CouplingSet& cs = couplings[i];
        if (phi_bar[i].size() != cs.RN.rows())
            throw std::invalid_argument("joule_losses: 1D potential length mismatch");
        Vec dphi = cs.Ps * phi_bar[i];
        Vec q = m_sigma_bar[i].cwiseProduct(dphi.cwiseProduct(dphi));
        out.per_element.push_back(q);
        out.total += q.sum();
        if (spreading == JouleSpreading::Average) {
            out.nodal += cs.X_avg.transpose() * q;
        } else {
            out.nodal += 0.5 * (cs.X.cwiseAbs().transpose() * q);
        }
    }
    return out;
}

ReducedSystem dirichlet_reduce(const SpMat& K, const Vec& rhs, const DirichletSet& dset) {
    if (K.rows() != K.cols())
        throw std::invalid_argument("dirichlet_reduce: matrix must be square");
    long n = K.rows();
    ReducedSystem rs;
    rs.prescribed = Vec::Zero(n);
    rs.full_to_active.assign(static_cast<size_t>(n), 0);
    std::vector<bool> fixed(static_cast<size_t>(n), false);
    for (size_t i = 0; i < dset.nodes.size(); ++i) {
        long node = dset.nodes[i];
        if (fixed[static_cast<size_t>(node)] &&
            rs.prescribed[node] != dset.values[i])
            throw std::invalid_argument("dirichlet_reduce: node listed with two values");
        fixed[static_cast<size_t>(node)] = true;
        rs.prescribed[node] = dset.values[i];
    }
    for (long k = 0; k < n; ++k) {
        if (fixed[static_cast<size_t>(k)]) {
            rs.full_to_active[static_cast<size_t>(k)] = -1;
        } else {
            rs.full_to_active[static_cast<size_t>(k)] = static_cast<long>(rs.active_to_full.size());
            rs.active_to_full.push_back(k);
        }
    }
    long na = static_cast<long>(rs.active_to_full.size());
    if (na == 0)
        throw std::runtime_error("dirichlet_reduce: every node is prescribed (empty active set)");

    rs.rhs = Vec(na);
    for (long a = 0; a < na; ++a)
        rs.rhs[a] = rhs[rs.active_to_full[static_cast<size_t>(a)]];

    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(K.nonZeros()));
    for (int c = 0; c < K.outerSize(); ++c)
        for (SpMat::InnerIterator it(K, c); it; ++it) {
            long ra = rs.full_to_active[static_cast<size_t>(it.row())];
            long ca = rs.full_to_active[static_cast<size_t>(it.col())];
            if (ra < 0)
                continue;
            if (ca < 0)
                rs.rhs[ra] -= it.value() * rs.prescribed[it.col()];
            else
                trips.emplace_back(ra, ca, it.value());
        }
    rs.K.resize(na, na);
    rs.K.setFromTriplets(trips.begin(), trips.end());
    return rs;
}

RobinMatrices robin_matrix(const RobinSet& rset, long n_nodes) {
    RobinMatrices rm;
    rm.diag = Vec::Zero(n_nodes);
    rm.rhs = Vec::Zero(n_nodes);
    for (size_t i = 0; i < rset.nodes.size(); ++i) {
        if (rset.h[static_cast<long>(i)] < 0.0)
            throw std::invalid_argument("robin_matrix: negative heat transfer coefficient");
        double v = rset.h[static_cast<long>(i)] * rset.area[static_cast<long>(i)];
        rm.diag[rset.nodes[i]] += v;
        rm.rhs[rset.nodes[i]] += v * rset.T_inf;
    }
    return rm;
}

RobinSet make_robin_all_boundary(const RectilinearGrid& grid, const DualMeasures& dual, double h,
                                 double T_inf) {
    RobinSet rs;
    rs.T_inf = T_inf;
    std::vector<double> hs, areas;
    for (long n = 0; n < grid.node_count(); ++n) {
        if (!grid.is_boundary_node(n))
            continue;
        rs.nodes.push_back(n);
        hs.push_back(h);
        areas.push_back(dual.boundary_dual_area[n]);
    }
    rs.h = Eigen::Map<Vec>(hs.data(), static_cast<long>(hs.size()));
    rs.area = Eigen::Map<Vec>(areas.data(), static_cast<long>(areas.size()));
    return rs;
}

PecReduction pec_reduce(const SpMat& K, const Vec& rhs, const RectilinearGrid& grid,
                        const std::vector<bool>& pec_cells) {
    long n_cells = static_cast<long>(grid.cells_dir(0)) * grid.cells_dir(1) * grid.cells_dir(2);
    if (static_cast<long>(pec_cells.size()) != n_cells)
        throw std::invalid_argument("pec_reduce: mask size mismatch");

    // connected components of flagged cells (face adjacency)
    std::vector<long> cell_group(static_cast<size_t>(n_cells), -1);
    long n_groups = 0;
    int cdx = grid.cells_dir(0), cdy = grid.cells_dir(1), cdz = grid.cells_dir(2);
    auto cidx = [&](int i, int j, int k) { return grid.cell_index(i, j, k); };
    for (int k = 0; k < cdz; ++k)
        for (int j = 0; j < cdy; ++j)
            for (int i = 0; i < cdx; ++i) {
                long c = cidx(i, j, k);
                if (!pec_cells[static_cast<size_t>(c)] || cell_group[static_cast<size_t>(c)] >= 0)
                    continue;
                long g = n_groups++;
                std::queue<std::array<int, 3>> q;
                q.push({i, j, k});
                cell_group[static_cast<size_t>(c)] = g;
                while (!q.empty()) {
                    auto [ci, cj, ck] = q.front();
                    q.pop();
                    const int di[6] = {1, -1, 0, 0, 0, 0};
                    const int dj[6] = {0, 0, 1, -1, 0, 0};
                    const int dk[6] = {0, 0, 0, 0, 1, -1};
                    for (int d = 0; d < 6; ++d) {
                        int ni = ci + di[d], nj = cj + dj[d], nk = ck + dk[d];
                        if (ni < 0 || nj < 0 || nk < 0 || ni >= cdx || nj >= cdy || nk >= cdz)
                            continue;
                        long nc = cidx(ni, nj, nk);
                        if (pec_cells[static_cast<size_t>(nc)] &&
                            cell_group[static_cast<size_t>(nc)] < 0) {
                            cell_group[static_cast<size_t>(nc)] = g;
                            q.push({ni, nj, nk});
                        }
                    }
                }
            }

    // node -> group via the corner nodes of each flagged cell; nodes shared
    // by touching groups would conflict, but face-connected components make
    // shared corners join the same group or merge through the walk above
    std::vector<long> node_group(static_cast<size_t>(grid.node_count()), -1);
    for (int k = 0; k < cdz; ++k)
        for (int j = 0; j < cdy; ++j)
            for (int i = 0; i < cdx; ++i) {
                long g = cell_group[static_cast<size_t>(cidx(i, j, k))];
                if (g < 0)
                    continue;
                int i1 = (grid.points(0) > 1) ? 1 : 0;
                int j1 = (grid.points(1) > 1) ? 1 : 0;
                int k1 = (grid.points(2) > 1) ? 1 : 0;
                for (int a = 0; a <= i1; ++a)
                    for (int b = 0; b <= j1; ++b)
                        for (int c = 0; c <= k1; ++c) {
                            long node = grid.node_index(i + a, j + b, k + c);
                            long& ng = node_group[static_cast<size_t>(node)];
                            if (ng >= 0 && ng != g)
                                throw std::runtime_error(
                                    "pec_reduce: corner-touching PEC groups are not supported");
                            ng = g;
                        }
            }

    PecReduction pr;
    pr.group_count = n_groups;
    pr.groups.assign(static_cast<size_t>(n_groups), {});
    pr.node_to_unknown.assign(static_cast<size_t>(grid.node_count()), -1);
    long next = 0;
    std::vector<long> group_unknown(static_cast<size_t>(n_groups), -1);
    for (long n = 0; n < grid.node_count(); ++n) {
        long g = node_group[static_cast<size_t>(n)];
        if (g < 0) {
            pr.node_to_unknown[static_cast<size_t>(n)] = next++;
        } else {
            if (group_unknown[static_cast<size_t>(g)] < 0)
                group_unknown[static_cast<size_t>(g)] = next++;
            pr.node_to_unknown[static_cast<size_t>(n)] = group_unknown[static_cast<size_t>(g)];
            pr.groups[static_cast<size_t>(g)].push_back(n);
        }
    }
    pr.unknown_count = next;

    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(K.nonZeros()));
    for (int c = 0; c < K.outerSize(); ++c)
        for (SpMat::InnerIterator it(K, c); it; ++it)
            trips.emplace_back(pr.node_to_unknown[static_cast<size_t>(it.row())],
                               pr.node_to_unknown[static_cast<size_t>(it.col())], it.value());
    pr.K.resize(pr.unknown_count, pr.unknown_count);
    pr.K.setFromTriplets(trips.begin(), trips.end());
    pr.rhs = Vec::Zero(pr.unknown_count);
    for (long n = 0; n < grid.node_count(); ++n)
        pr.rhs[pr.node_to_unknown[static_cast<size_t>(n)]] += rhs[n];
    return pr;
}

DirichletSet map_dirichlet(const DirichletSet& dset, const PecReduction& pec, double value_tol) {
    DirichletSet out;
    std::vector<long> seen_at(static_cast<size_t>(pec.unknown_count), -1);
    for (size_t i = 0; i < dset.nodes.size(); ++i) {
        long u = pec.node_to_unknown[static_cast<size_t>(dset.nodes[i])];
        long& pos = seen_at[static_cast<size_t>(u)];
        if (pos >= 0) {
            if (std::abs(out.values[static_cast<size_t>(pos)] - dset.values[i]) > value_tol)
                throw std::runtime_error(
                    "map_dirichlet: PEC group intersects electrodes with different values");
            continue;
        }
        pos = static_cast<long>(out.size());
        out.add(u, dset.values[i]);
    }
    return out;
}

PenaltySystem penalty_blocks(const SpMat& K_bulk, const CouplingSet& coupling,
                             const Vec& m_alpha_bar, const Vec& m_beta_bar) {
    long n = K_bulk.rows();
    long n1d = coupling.RN.rows();
    if (m_beta_bar.size() != n1d || m_alpha_bar.size() != n1d - 1)
        throw std::invalid_argument("penalty_blocks: wire coefficient dimensions mismatch");
    for (long j = 0; j < n1d; ++j)
        if (m_beta_bar[j] < 0.0)
            throw std::invalid_argument("penalty_blocks: negative beta");

    SpMat MbPi = m_beta_bar.asDiagonal() * coupling.Pi;        // n1d x n
    SpMat RNt_Mb = coupling.RN.transpose() * SpMat(m_beta_bar.asDiagonal()); // n x n1d
    SpMat K1d = coupling.Ps.transpose() *
                SpMat(m_alpha_bar.asDiagonal() * coupling.Ps); // n1d x n1d

    std::vector<Triplet> trips;
    auto push_block = [&trips](const SpMat& M, long row0, long col0, double scale) {
        for (int c = 0; c < M.outerSize(); ++c)
            for (SpMat::InnerIterator it(M, c); it; ++it)
                trips.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
    };
    push_block(K_bulk, 0, 0, 1.0);
    push_block(SpMat(coupling.RN.transpose() * MbPi), 0, 0, -1.0);
    push_block(RNt_Mb, 0, n, 1.0);
    push_block(MbPi, n, 0, 1.0);
    push_block(K1d, n, n, 1.0);
    for (long j = 0; j < n1d; ++j)
        trips.emplace_back(n + j, n + j, -m_beta_bar[j]);

    PenaltySystem ps;
    ps.n3d = n;
    ps.n1d = n1d;
    ps.A.resize(n + n1d, n + n1d);
    ps.A.setFromTriplets(trips.begin(), trips.end());
    ps.A.prune(0.0);
    return ps;
}

} // namespace wirefit
