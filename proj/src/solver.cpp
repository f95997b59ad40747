#include "wirefit/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace wirefit {

struct LinearSolver::Impl {
    SolveMethod method;
    SpMat K;
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    Eigen::BiCGSTAB<SpMat, Eigen::DiagonalPreconditioner<double>> krylov;
    bool ready = false;
};

LinearSolver::LinearSolver(SolveMethod method) : impl_(std::make_unique<Impl>()) {
    impl_->method = method;
}
LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

void LinearSolver::compute(const SpMat& K) {
    if (K.rows() != K.cols())
        throw std::invalid_argument("LinearSolver: matrix must be square");
    impl_->K = K;
    impl_->K.makeCompressed();
    if (impl_->method == SolveMethod::Direct) {
        impl_->lu.compute(impl_->K);
        if (impl_->lu.info() != Eigen::Success)
            throw std::runtime_error(
                "LinearSolver: singular factorization; the operator has a nullspace "
                "(no Dirichlet/Robin anchoring?)");
    } else {
        impl_->krylov.setTolerance(1e-13);
        impl_->krylov.setMaxIterations(20000);
        impl_->krylov.compute(impl_->K);
    }
    impl_->ready = true;
}

Vec LinearSolver::solve(const Vec& b) const {
    if (!impl_->ready)
        throw std::runtime_error("LinearSolver: compute() not called");
    Vec x;
    if (impl_->method == SolveMethod::Direct)
        x = impl_->lu.solve(b);
    else
        x = impl_->krylov.solve(b);

    double bnorm = b.norm();
    auto residual = [&](const Vec& y) {
        return (impl_->K * y - b).norm() / (bnorm > 0.0 ? bnorm : 1.0);
    };
    last_residual_ = residual(x);
    // a couple of refinement sweeps recover the verified tolerance when the
    // factorization alone falls short
    for (int sweep = 0; sweep < 3 && last_residual_ > residual_tol; ++sweep) {
        Vec r = b - impl_->K * x;
        if (impl_->method == SolveMethod::Direct)
            x += impl_->lu.solve(r);
        else
            x += impl_->krylov.solve(r);
        last_residual_ = residual(x);
    }
    if (!(last_residual_ <= residual_tol) || !x.allFinite())
        throw std::runtime_error("LinearSolver: relative residual " +
                                 std::to_string(last_residual_) + " exceeds tolerance");
    return x;
}

Vec solve_linear(const SpMat& K, const Vec& b, SolveMethod method) {
    LinearSolver s(method);
    s.compute(K);
    return s.solve(b);
}

std::vector<CouplingSet> Model::coupling_sets() const {
    std::vector<CouplingSet> cs;
    cs.reserve(wires.size());
    for (const Wire& w : wires)
        cs.push_back(w.coupling);
    return cs;
}

std::vector<Vec> Model::sigma_bars() const {
    std::vector<Vec> v;
    v.reserve(wires.size());
    for (const Wire& w : wires)
        v.push_back(w.m_sigma_bar);
    return v;
}

std::vector<Vec> Model::lambda_bars() const {
    std::vector<Vec> v;
    v.reserve(wires.size());
    for (const Wire& w : wires)
        v.push_back(w.m_lambda_bar);
    return v;
}

ElectricSystem assemble_electric(const Model& model) {
    ElectricSystem sys{SpMat(), PecReduction{}, ReducedSystem{}, LinearSolver(model.method)};
    SpMat G = build_gradient(model.grid);
    Vec m_sigma = edge_conductance_matrix(model.grid, model.dual, model.materials,
                                          Conductivity::Sigma);
    sys.K_full = bulk_stiffness(G, m_sigma);
    if (!model.wires.empty())
        sys.K_full += wire_stiffness(model.coupling_sets(), model.sigma_bars());

    Vec rhs = Vec::Zero(model.grid.node_count());
    sys.pec = pec_reduce(sys.K_full, rhs, model.grid, model.materials.pec_cells);
    DirichletSet dset = map_dirichlet(model.electric_dirichlet, sys.pec, 1e-12);
    sys.reduced = dirichlet_reduce(sys.pec.K, sys.pec.rhs, dset);
    sys.solver.compute(sys.reduced.K);
    return sys;
}

void solve_electric(ElectrothermalState& state, const ElectricSystem& sys, const Model& model) {
    Vec xa = sys.solver.solve(sys.reduced.rhs);
    state.phi = sys.pec.expand(sys.reduced.expand(xa));
    state.phi_bar.clear();
    for (const Wire& w : model.wires)
        state.phi_bar.push_back(w.coupling.Pi * state.phi);
}

ThermalSystem assemble_thermal(const Model& model, double dt) {
    ThermalSystem sys{Vec(), SpMat(), RobinMatrices{}, SpMat(), LinearSolver(model.method), dt};
    SpMat G = build_gradient(model.grid);
    Vec m_lambda = edge_conductance_matrix(model.grid, model.dual, model.materials,
                                           Conductivity::Lambda);
    sys.K_full = bulk_stiffness(G, m_lambda);
    if (!model.wires.empty())
        sys.K_full += wire_stiffness(model.coupling_sets(), model.lambda_bars());
    sys.m_rho_c = node_capacitance_matrix(model.grid, model.dual, model.materials.cell_rho_c);
    sys.robin = robin_matrix(model.robin, model.grid.node_count());
    sys.A = sys.K_full;
    sys.A += SpMat(((sys.m_rho_c / dt) + sys.robin.diag).asDiagonal());
    sys.solver.compute(sys.A);
    return sys;
}

void step_thermal(ElectrothermalState& state, const ThermalSystem& sys, const Vec& q_nodal,
                  const Model& model) {
    Vec rhs = sys.m_rho_c.cwiseProduct(state.T) / sys.dt + q_nodal + sys.robin.rhs;
    state.T = sys.solver.solve(rhs);
    state.T_bar.clear();
    for (const Wire& w : model.wires)
        state.T_bar.push_back(w.coupling.Pi * state.T);
}

std::vector<ElectrothermalState> run_transient(const Model& model, const StepCallback& on_step) {
    if (model.transient.steps < 1 || !(model.transient.t_end > 0.0))
        throw std::invalid_argument("run_transient: invalid time discretization");
    const double dt = model.transient.dt();
    const bool constant_materials = !model.materials.sigma_of_T && !model.materials.lambda_of_T;

    Model work = model;
    ElectrothermalState state;
    state.phi = Vec::Constant(model.grid.node_count(), model.phi_init);
    state.T = Vec::Constant(model.grid.node_count(), model.T_init);
    for (const Wire& w : model.wires) {
        state.phi_bar.push_back(w.coupling.Pi * state.phi);
        state.T_bar.push_back(w.coupling.Pi * state.T);
    }
    state.time = 0.0;

    std::vector<ElectrothermalState> series;
    series.push_back(state);
    if (on_step)
        on_step(0, state);

    ElectricSystem esys;
    ThermalSystem tsys;
    bool assembled = false;
    const bool has_electric = !model.electric_dirichlet.nodes.empty() || !model.wires.empty();

    for (int n = 1; n <= model.transient.steps; ++n) {
        if (!assembled || !constant_materials) {
            if (!constant_materials) {
                long nc = work.materials.cell_sigma.size();
                for (long c = 0; c < nc; ++c) {
                    // previous-step temperature at the cell, via corner mean
                    double Tc = 0.0;
                    int cnt = 0;
                    auto cells0 = c % work.grid.cells_dir(0);
                    auto rest = c / work.grid.cells_dir(0);
                    int i = static_cast<int>(cells0);
                    int j = static_cast<int>(rest % work.grid.cells_dir(1));
                    int k = static_cast<int>(rest / work.grid.cells_dir(1));
                    int i1 = (work.grid.points(0) > 1) ? 1 : 0;
                    int j1 = (work.grid.points(1) > 1) ? 1 : 0;
                    int k1 = (work.grid.points(2) > 1) ? 1 : 0;
                    for (int a = 0; a <= i1; ++a)
                        for (int b = 0; b <= j1; ++b)
                            for (int d = 0; d <= k1; ++d) {
                                Tc += state.T[work.grid.node_index(i + a, j + b, k + d)];
                                ++cnt;
                            }
                    Tc /= cnt;
                    if (model.materials.sigma_of_T)
                        work.materials.cell_sigma[c] = model.materials.sigma_of_T(c, Tc);
                    if (model.materials.lambda_of_T)
                        work.materials.cell_lambda[c] = model.materials.lambda_of_T(c, Tc);
                }
            }
            if (has_electric)
                esys = assemble_electric(work);
            tsys = assemble_thermal(work, dt);
            assembled = true;
        }
        Vec q_nodal = Vec::Zero(model.grid.node_count());
        if (has_electric) {
            solve_electric(state, esys, work);
            if (!work.wires.empty())
                q_nodal = joule_losses(work.coupling_sets(), work.sigma_bars(), state.phi_bar,
                                       work.spreading)
                              .nodal;
        }
        step_thermal(state, tsys, q_nodal, work);
        state.time = dt * n;
        if (!state.T.allFinite() || !state.phi.allFinite())
            throw std::runtime_error("run_transient: non-finite field at step " +
                                     std::to_string(n));
        series.push_back(state);
        if (on_step)
            on_step(n, state);
    }
    return series;
}

PenaltyResult solve_penalty(const Model& model, double beta_bar) {
    if (model.wires.size() != 1)
        throw std::invalid_argument("solve_penalty: expects exactly one wire");
    if (!(beta_bar > 0.0))
        throw std::invalid_argument("solve_penalty: beta must be positive");
    const Wire& w = model.wires.front();

    SpMat G = build_gradient(model.grid);
    Vec m_sigma = edge_conductance_matrix(model.grid, model.dual, model.materials,
                                          Conductivity::Sigma);
    SpMat K_bulk = bulk_stiffness(G, m_sigma);

    // Solve the block system through its lifted form with the exchange
    // current w = Mb (Pi u - ubar) as unknown:
    //   K u - RN^T w           = f
    //   Ps^T Ma Ps ubar + w    = 0
    //   L~ Pi u - L~ ubar - w/beta = 0
    // Equivalent for every beta > 0, but entries stay bounded as beta
    // grows, which the raw two-block form does not.
    const long n = model.grid.node_count();
    const long n1d = w.coupling.RN.rows();
    Vec dual_len = Eigen::Map<const Vec>(w.grid1d.dual_len.data(), n1d);
    SpMat K1d = w.coupling.Ps.transpose() * SpMat(w.m_sigma_bar.asDiagonal() * w.coupling.Ps);

    std::vector<Triplet> trips;
    auto push_block = [&trips](const SpMat& M, long row0, long col0, double scale) {
        for (int c = 0; c < M.outerSize(); ++c)
            for (SpMat::InnerIterator it(M, c); it; ++it)
                trips.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
    };
    push_block(K_bulk, 0, 0, 1.0);
    push_block(SpMat(w.coupling.RN.transpose()), 0, n + n1d, -1.0);
    push_block(K1d, n, n, 1.0);
    for (long j = 0; j < n1d; ++j) {
        trips.emplace_back(n + j, n + n1d + j, 1.0);
        trips.emplace_back(n + n1d + j, n + j, -dual_len[j]);
        trips.emplace_back(n + n1d + j, n + n1d + j, -1.0 / beta_bar);
    }
    push_block(SpMat(dual_len.asDiagonal() * w.coupling.Pi), n + n1d, 0, 1.0);

    SpMat A(n + 2 * n1d, n + 2 * n1d);
    A.setFromTriplets(trips.begin(), trips.end());

    ReducedSystem red = dirichlet_reduce(A, Vec::Zero(n + 2 * n1d), model.electric_dirichlet);
    Vec x = red.expand(solve_linear(red.K, red.rhs, model.method));

    PenaltyResult out;
    out.u = x.head(n);
    out.u_bar = x.segment(n, n1d);
    out.coupling_residual_inf = (w.coupling.Pi * out.u - out.u_bar).cwiseAbs().maxCoeff();
    return out;
}

} // namespace wirefit
