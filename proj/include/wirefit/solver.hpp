#pragma once

#include "wirefit/assembly.hpp"

#include <functional>
#include <memory>

namespace wirefit {

enum class SolveMethod { Direct, BiCGStab };

/// Sparse solve with verified residual. Direct factorization by default;
/// the stabilized Krylov path with diagonal preconditioning serves large
/// grids behind the config switch.
class LinearSolver {
public:
    explicit LinearSolver(SolveMethod method = SolveMethod::Direct);
    ~LinearSolver();
    LinearSolver(LinearSolver&&) noexcept;
    LinearSolver& operator=(LinearSolver&&) noexcept;

    void compute(const SpMat& K);
    /// Solves K x = b; throws if the verified relative residual exceeds
    /// the tolerance (default 1e-10) even after iterative refinement.
    Vec solve(const Vec& b) const;
    double last_residual() const { return last_residual_; }
    static constexpr double residual_tol = 1e-10;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    mutable double last_residual_ = 0.0;
};

/// One-shot convenience wrapper.
Vec solve_linear(const SpMat& K, const Vec& b, SolveMethod method = SolveMethod::Direct);

struct TransientConfig {
    int steps = 1;
    double t_end = 1.0;
    double dt() const { return t_end / steps; }
};

/// Wire bundle: geometry, 1D grid, coupling operators and lumped material
/// diagonals.
struct Wire {
    WireCurve curve;
    Wire1DGrid grid1d;
    CouplingSet coupling;
    Vec m_sigma_bar;  // electric 1D mass diagonal
    Vec m_lambda_bar; // thermal 1D mass diagonal
};

/// Full coupled electrothermal model on one grid.
struct Model {
    explicit Model(RectilinearGrid g)
        : grid(std::move(g)), dual(dual_measures(grid)),
          materials(MaterialField::homogeneous(grid, 1.0, 1.0, 1.0)) {}

    RectilinearGrid grid;
    DualMeasures dual;
    MaterialField materials;
    std::vector<Wire> wires;
    DirichletSet electric_dirichlet; // full-grid node indices
    RobinSet robin;                  // thermal boundary
    double T_init = 300.0;
    double phi_init = 0.0;
    TransientConfig transient;
    SolveMethod method = SolveMethod::Direct;
    JouleSpreading spreading = JouleSpreading::Average;

    std::vector<CouplingSet> coupling_sets() const;
    std::vector<Vec> sigma_bars() const;
    std::vector<Vec> lambda_bars() const;
};

/// Nodal and per-wire fields at one time level. phi_bar = Pi phi and
/// T_bar = Pi T hold after every accepted step.
struct ElectrothermalState {
    Vec phi;
    Vec T;
    std::vector<Vec> phi_bar;
    std::vector<Vec> T_bar;
    double time = 0.0;
};

/// Assembled electric subproblem: stiffness with wires, PEC merge and
/// Dirichlet elimination, factorized once for constant materials.
struct ElectricSystem {
    SpMat K_full;
    PecReduction pec;
    ReducedSystem reduced;
    LinearSolver solver;
};
ElectricSystem assemble_electric(const Model& model);

/// Solves the reduced electric system and refreshes phi and phi_bar.
void solve_electric(ElectrothermalState& state, const ElectricSystem& sys, const Model& model);

/// Assembled thermal pieces: capacitance, conductivity stiffness with
/// wires and the Robin boundary matrix.
struct ThermalSystem {
    Vec m_rho_c;      // diagonal
    SpMat K_full;     // K_lambda + K_lambda_w
    RobinMatrices robin;
    SpMat A;          // M/dt + K + M_boundary
    LinearSolver solver;
    double dt = 0.0;
};
ThermalSystem assemble_thermal(const Model& model, double dt);

/// One backward-Euler step: (M/dt + K + M_bnd) T' = M/dt T + Q + M_bnd T_inf.
void step_thermal(ElectrothermalState& state, const ThermalSystem& sys, const Vec& q_nodal,
                  const Model& model);

/// Fractional-step loop: electric solve with lagged temperature, Joule
/// losses, implicit thermal step. The callback sees every accepted state
/// (including the initial one at step 0).
using StepCallback = std::function<void(int step, const ElectrothermalState&)>;
std::vector<ElectrothermalState> run_transient(const Model& model,
                                               const StepCallback& on_step = nullptr);

/// Penalty solve of the fissure block system for the model's single wire.
struct PenaltyResult {
    Vec u;
    Vec u_bar;
    double coupling_residual_inf = 0.0; // ||Pi u - ubar||_inf
};
PenaltyResult solve_penalty(const Model& model, double beta_bar);

} // namespace wirefit
