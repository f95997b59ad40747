#pragma once

#include "wirefit/coupling.hpp"
#include "wirefit/materials.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wirefit {

/// Nodes with prescribed values (electrode groups flattened to one list;
/// every listed node carries exactly one value).
struct DirichletSet {
    std::vector<long> nodes;
    std::vector<double> values;

    void add(long node, double value) {
        nodes.push_back(node);
        values.push_back(value);
    }
    size_t size() const { return nodes.size(); }
};

/// Robin data on boundary nodes: heat transfer coefficient, ambient
/// temperature and the augmented dual boundary areas.
struct RobinSet {
    std::vector<long> nodes;
    Vec h;    // W/(m^2 K), per listed node
    Vec area; // |dV~_k n dD|, per listed node
    double T_inf = 0.0;
};

/// System after eliminating prescribed unknowns; keeps the maps needed to
/// reconstruct the full vector.
struct ReducedSystem {
    SpMat K;
    Vec rhs;
    std::vector<long> active_to_full; // active index -> full index
    std::vector<long> full_to_active; // -1 where eliminated
    Vec prescribed;                   // full-size, Dirichlet values (0 elsewhere)

    Vec expand(const Vec& x_active) const;
    Vec restrict_to_active(const Vec& x_full) const;
};

/// Node merging for perfect conductors: all nodes of a connected group of
/// flagged cells share one unknown.
struct PecReduction {
    SpMat K;
    Vec rhs;
    std::vector<long> node_to_unknown; // full node -> merged unknown
    long unknown_count = 0;
    long group_count = 0;
    std::vector<std::vector<long>> groups; // member nodes per PEC group

    Vec expand(const Vec& x_merged) const;
};

/// K_alpha = G^T M_alpha G from the incidence structure; exactly symmetric,
/// constants in the kernel.
SpMat bulk_stiffness(const SpMat& G, const Vec& m_alpha);

/// Lumped wire stiffness sum_i X_i^T Mbar_i Ps_i Pi_i.
SpMat wire_stiffness(const std::vector<CouplingSet>& couplings,
                     const std::vector<Vec>& m_alpha_bar);

/// How per-element wire heat is spread to grid nodes.
enum class JouleSpreading {
    Average,  // half-sum of the two adjacent sampling rows (conserves total)
    AbsoluteX // rows 0.5*|X|; coincides with Average only for disjoint supports
};

/// Per-element wire losses Qbar_j = Mbar_sigma_jj (Ps phibar)_j^2 and their
/// nodal spreading.
struct JouleLosses {
    Vec nodal;                  // N_N
    std::vector<Vec> per_element; // per wire
    double total = 0.0;
};
JouleLosses joule_losses(const std::vector<CouplingSet>& couplings,
                         const std::vector<Vec>& m_sigma_bar, const std::vector<Vec>& phi_bar,
                         JouleSpreading spreading = JouleSpreading::Average);

/// Row/column elimination with explicit right-hand-side move.
ReducedSystem dirichlet_reduce(const SpMat& K, const Vec& rhs, const DirichletSet& dset);

/// Diagonal Robin matrix over all nodes (nonzero on boundary nodes only)
/// and its ambient right-hand-side contribution M * T_inf.
struct RobinMatrices {
    Vec diag; // N_N
    Vec rhs;  // N_N, = diag * T_inf
};
RobinMatrices robin_matrix(const RobinSet& rset, long n_nodes);

/// Build the Robin node set covering the whole boundary with uniform h.
RobinSet make_robin_all_boundary(const RectilinearGrid& grid, const DualMeasures& dual, double h,
                                 double T_inf);

PecReduction pec_reduce(const SpMat& K, const Vec& rhs, const RectilinearGrid& grid,
                        const std::vector<bool>& pec_cells);

/// Translate a full-grid Dirichlet set through a PEC merge; nodes of one
/// group must agree on the value.
DirichletSet map_dirichlet(const DirichletSet& dset, const PecReduction& pec, double value_tol);

/// beta-penalty block system for (u, ubar) of one wire:
///   [ K - RN^T Mb Pi      RN^T Mb      ] [u   ]   [f]
///   [ Mb Pi               Ps^T Ma Ps - Mb ] [ubar] = [0]
struct PenaltySystem {
    SpMat A;    // (N_N + n1d) square
    long n3d = 0;
    long n1d = 0;
};
PenaltySystem penalty_blocks(const SpMat& K_bulk, const CouplingSet& coupling,
                             const Vec& m_alpha_bar, const Vec& m_beta_bar);

} // namespace wirefit
