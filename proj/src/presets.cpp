#include "wirefit/presets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wirefit {

namespace {

// subdivide any interval longer than cap into equal pieces
std::vector<double> cap_subdivide(std::vector<double> pts, double cap) {
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        out.push_back(pts[i]);
        double len = pts[i + 1] - pts[i];
        int pieces = static_cast<int>(std::ceil(len / cap - 1e-9));
        for (int p = 1; p < pieces; ++p)
            out.push_back(pts[i] + len * double(p) / double(pieces));
    }
    out.push_back(pts.back());
    return out;
}

std::vector<double> dedup(std::vector<double> pts, double tol) {
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts)
        if (out.empty() || p - out.back() > tol)
            out.push_back(p);
    return out;
}

// enforce exact mirror symmetry about the midpoint of [0, L]
void mirror_symmetrize(std::vector<double>& pts, double L) {
    size_t n = pts.size();
    for (size_t i = 0; i < n / 2; ++i) {
        double lo = pts[i], hi = pts[n - 1 - i];
        double m = 0.5 * (lo + (L - hi));
        pts[i] = m;
        pts[n - 1 - i] = L - m;
    }
    if (n % 2 == 1)
        pts[n / 2] = 0.5 * L;
}

double resolve_r_cpl(const ExperimentConfig& cfg, const RectilinearGrid& grid, int wire_dir,
                     const WireCurve* curve, double height) {
    switch (cfg.r_cpl.kind) {
    case RcplRule::Kind::Absolute:
        return cfg.r_cpl.value;
    case RcplRule::Kind::MaxTransverse:
        return grid.max_edge_length_transverse(wire_dir);
    case RcplRule::Kind::Curvature:
        return 1e-2 / frenet_curvature_max(*curve);
    case RcplRule::Kind::CurvatureChip:
        return 1e-4 * height * height * frenet_curvature_max(*curve);
    }
    return 0.0;
}

// epsilon over the evaluation box, entries outside masked out of both fields
double masked_eps_3d(const RectilinearGrid& grid, const Vec& u_h, const Vec& weights,
                     const std::function<double(const Vec3&)>& exact) {
    Vec uh = Vec::Zero(u_h.size());
    Vec ue = Vec::Zero(u_h.size());
    for (long n = 0; n < u_h.size(); ++n) {
        if (weights[n] <= 0.0)
            continue;
        uh[n] = u_h[n];
        ue[n] = exact(grid.node_position(n));
    }
    return error_eps(uh, ue, weights);
}

} // namespace

Axis1D model_axis(const GridSpec& spec, double lo, double hi, double x0) {
    switch (spec.kind) {
    case GridSpec::Kind::Uniform:
        return uniform_axis(lo, hi, 2 * spec.layers + 1);
    case GridSpec::Kind::GlobalGraded:
        return graded_axis(lo, hi, x0, spec.layers, spec.mu);
    case GridSpec::Kind::LocalGraded: {
        Axis1D base = uniform_axis(lo, hi, 2 * spec.layers + 1);
        double b = spec.b;
        if (!(b > 0.0))
            b = (hi - lo) / double(2 * spec.layers) / 3.0;
        if (!base.contains(x0, 1e-12 * (hi - lo)))
            base.insert({x0}, 1e-12 * (hi - lo));
        return refine_axis_local(base, x0, b, 10, spec.mu, 1e-12 * (hi - lo));
    }
    }
    throw std::logic_error("model_axis: unreachable");
}

// ---------------------------------------------------------------------------
// 0D-2D resistor
// ---------------------------------------------------------------------------

ResistorResult solve_resistor_0d2d(const ExperimentConfig& cfg, int layers) {
    const double d = cfg.d;
    const double cx = 0.5 * d;
    GridSpec gs = cfg.grid;
    gs.layers = layers;

    Axis1D ax = model_axis(gs, 0.0, d, cx);
    Axis1D ay = model_axis(gs, 0.0, d, cx);
    ax.insert({0.45 * d}, 1e-12 * d);
    RectilinearGrid grid(std::move(ax), std::move(ay), Axis1D({0.0}));
    DualMeasures dual = dual_measures(grid);

    const double r0 = cfg.effective_r0();
    const double r_cpl = resolve_r_cpl(cfg, grid, 2, nullptr, 0.0);
    CouplingSet cs = point_coupling(grid, {cx, cx, 0.0}, r_cpl, cfg.r_bar, r0, cfg.n_theta,
                                    cfg.theta0);

    const double R0p = 1.0; // external resistance per unit length
    const double V0 = 1.0;
    const double G0p = 1.0 / R0p;
    const double Rint = analytic_rint(cfg.sigma, cfg.r_bar, r0);
    const double I0p = V0 / (R0p + Rint);

    SpMat G = build_gradient(grid);
    Vec m_sigma = edge_conductance_matrix(
        grid, dual, Vec::Constant(grid.cells_dir(0) * grid.cells_dir(1), cfg.sigma));
    SpMat K = bulk_stiffness(G, m_sigma);
    K += SpMat(cs.RN.transpose() * (G0p * cs.Pi)); // external circuit, rank one
    Vec rhs = cs.RN.transpose() * Vec::Constant(1, G0p * V0);

    DirichletSet dset;
    for (long n = 0; n < grid.node_count(); ++n) {
        if (!grid.is_boundary_node(n))
            continue;
        Vec3 p = grid.node_position(n);
        double r = std::hypot(p.x - cx, p.y - cx);
        dset.add(n, analytic_log2d(r, I0p, cfg.sigma, r0));
    }
    ReducedSystem red = dirichlet_reduce(K, rhs, dset);
    Vec phi = red.expand(solve_linear(red.K, red.rhs, cfg.method));

    ResistorResult res;
    res.h = grid.average_edge_length({true, true, false});
    res.r_cpl = r_cpl;
    res.phi_bar_h = (cs.Pi * phi)[0];
    res.phi_bar_exact = I0p * Rint;
    res.eps_1d = std::abs(res.phi_bar_h - res.phi_bar_exact) / std::abs(res.phi_bar_exact);

    Box omega{{0.0, 0.0, -1.0}, {0.45 * d, d, 1.0}};
    Vec w = omega_dual_volumes(grid, omega);
    res.eps_3d = masked_eps_3d(grid, phi, w, [&](const Vec3& p) {
        return analytic_log2d(std::hypot(p.x - cx, p.y - cx), I0p, cfg.sigma, r0);
    });
    return res;
}

// ---------------------------------------------------------------------------
// straight wire
// ---------------------------------------------------------------------------

Model build_straight_wire_model(const ExperimentConfig& cfg, int layers, int n1d,
                                std::optional<double> r_cpl_override) {
    const double d = cfg.d;
    const double cx = 0.5 * d;
    GridSpec gs = cfg.grid;
    gs.layers = layers;

    std::vector<double> s = equidistant_s(n1d);
    Axis1D ax = model_axis(gs, 0.0, d, cx);
    Axis1D ay = model_axis(gs, 0.0, d, cx);
    // the evaluation plane plus its mirror, keeping the axis symmetric
    // about the wire
    ax.insert({0.45 * d, 0.55 * d}, 1e-12 * d);
    Axis1D az = uniform_axis(0.0, d, 2 * gs.layers + 1);
    {
        std::vector<double> zpts;
        for (double sj : s)
            zpts.push_back(sj * d);
        az.insert(zpts, 1e-12 * d);
    }
    RectilinearGrid grid(std::move(ax), std::move(ay), std::move(az));

    Model model(std::move(grid));
    model.materials =
        MaterialField::homogeneous(model.grid, cfg.sigma, cfg.sigma, 1.0);
    model.method = cfg.method;

    Wire w{WireCurve::segment({cx, cx, 0.0}, {cx, cx, d}), Wire1DGrid{}, CouplingSet{}, Vec(),
           Vec()};
    w.grid1d = build_wire1d(w.curve, s);
    double r_cpl = r_cpl_override ? *r_cpl_override
                                  : resolve_r_cpl(cfg, model.grid, 2, &w.curve, 0.0);
    w.coupling = build_coupling(model.grid, w.curve, s, r_cpl, cfg.r_bar, cfg.effective_r0(),
                                cfg.n_theta, cfg.theta0);
    w.m_sigma_bar = wire_mass_matrix(w.grid1d, cfg.effective_sigma_bar());
    w.m_lambda_bar = wire_mass_matrix(w.grid1d, cfg.effective_sigma_bar());
    model.wires.push_back(std::move(w));

    // manufactured data on the whole boundary; on the wire axis the trace
    // is the 1D value at the wire radius
    StraightWireSolution sol{1.0, cfg.sigma, cfg.effective_r0(), cfg.r_bar, d};
    for (long n = 0; n < model.grid.node_count(); ++n) {
        if (!model.grid.is_boundary_node(n))
            continue;
        Vec3 p = model.grid.node_position(n);
        double r = std::hypot(p.x - cx, p.y - cx);
        double value = (r <= cfg.r_bar) ? sol.phi_bar(p.z) : sol.phi(r, p.z);
        model.electric_dirichlet.add(n, value);
    }
    return model;
}

StraightWireResult solve_straight_wire(const ExperimentConfig& cfg, int layers, int n1d,
                                       std::optional<double> r_cpl_override) {
    Model model = build_straight_wire_model(cfg, layers, n1d, r_cpl_override);
    ElectricSystem esys = assemble_electric(model);
    ElectrothermalState state;
    solve_electric(state, esys, model);

    const double d = cfg.d;
    const double cx = 0.5 * d;
    StraightWireSolution sol{1.0, cfg.sigma, cfg.effective_r0(), cfg.r_bar, d};
    const Wire& w = model.wires.front();

    StraightWireResult out;
    out.h = model.grid.average_edge_length();
    out.h_bar = 1.0 / double(n1d - 1);
    out.r_cpl = w.coupling.r_cpl;
    out.phi = state.phi;
    out.phi_bar = state.phi_bar.front();

    Box omega{{0.0, 0.0, 0.0}, {0.45 * d, d, d}};
    Vec wv = omega_dual_volumes(model.grid, omega);
    out.eps_3d = masked_eps_3d(model.grid, state.phi, wv, [&](const Vec3& p) {
        return sol.phi(std::hypot(p.x - cx, p.y - cx), p.z);
    });

    Vec exact_bar(n1d);
    for (int j = 0; j < n1d; ++j)
        exact_bar[j] = sol.phi_bar(w.grid1d.s_nodes[static_cast<size_t>(j)] * d);
    NormWeights nw = make_norm_weights(model.grid, omega, w.grid1d);
    out.eps_1d = error_eps(out.phi_bar, exact_bar, nw.d_stilde_bar);
    out.eps_h1_1d = error_eps_h1(out.phi_bar, exact_bar, w.coupling.Ps, nw.d_s_bar);
    out.delta_1d = error_delta(norm_1d_l2(out.phi_bar, nw.d_stilde_bar), sol.phi_bar_l2_norm());
    out.delta_h1_1d = error_delta(norm_1d_h1semi(out.phi_bar, w.coupling.Ps, nw.d_s_bar),
                                  sol.phi_bar_h1_seminorm());
    return out;
}

// ---------------------------------------------------------------------------
// bent wire
// ---------------------------------------------------------------------------

Model build_bent_wire_model(const ExperimentConfig& cfg, int n1d) {
    const double d = cfg.d;
    const Vec3 p0{0.5 * d, 0.02 * d, 0.02 * d};
    const Vec3 p1{0.5 * d, 0.02 * d, 0.98 * d};
    const double height = 0.7 * d;
    const double d_pec = 0.04 * d;
    WireCurve curve = WireCurve::bezier(p0, p1, height, {0.0, 1.0, 0.0});
    std::vector<double> s = equidistant_s(n1d);

    const double snap = 1e-12 * d;
    const double cap = 2.0 * d / double(n1d - 1);
    Box cube0{{p0.x - 0.5 * d_pec, 0.0, 0.0}, {p0.x + 0.5 * d_pec, d_pec, d_pec}};
    Box cube1{{p1.x - 0.5 * d_pec, 0.0, p1.z - 0.5 * d_pec},
              {p1.x + 0.5 * d_pec, d_pec, p1.z + 0.5 * d_pec}};

    std::vector<double> xs{0.0, 0.45 * d, cube0.lo.x, p0.x, cube0.hi.x, d};
    std::vector<double> ys{0.0, d_pec, d};
    std::vector<double> zs{0.0, d_pec, cube1.lo.z, d};
    double ymax = 0.0;
    for (double sj : s) {
        Vec3 p = curve.position(sj);
        ys.push_back(p.y);
        zs.push_back(p.z);
        ymax = std::max(ymax, p.y);
    }
    // grid lines between the wire apex and the boundary y = d
    int extra = n1d / 4;
    for (int i = 1; i <= extra; ++i)
        ys.push_back(ymax + (d - ymax) * double(i) / double(extra + 1));

    Axis1D ax(cap_subdivide(dedup(xs, snap), cap));
    Axis1D ay(cap_subdivide(dedup(ys, snap), cap));
    Axis1D az(cap_subdivide(dedup(zs, snap), 0.75 * cap));
    RectilinearGrid grid(std::move(ax), std::move(ay), std::move(az));

    Model model(std::move(grid));
    model.method = cfg.method;
    model.materials = MaterialField::homogeneous(model.grid, cfg.sigma, cfg.sigma, 1.0);

    // PEC mask + electrode values on the two cubes
    auto cell_center = [&](long c) {
        int i = static_cast<int>(c % model.grid.cells_dir(0));
        long rest = c / model.grid.cells_dir(0);
        int j = static_cast<int>(rest % model.grid.cells_dir(1));
        int k = static_cast<int>(rest / model.grid.cells_dir(1));
        return Vec3{0.5 * (model.grid.axis(0)[i] + model.grid.axis(0)[i + 1]),
                    0.5 * (model.grid.axis(1)[j] + model.grid.axis(1)[j + 1]),
                    0.5 * (model.grid.axis(2)[k] + model.grid.axis(2)[k + 1])};
    };
    long n_cells = static_cast<long>(model.grid.cells_dir(0)) * model.grid.cells_dir(1) *
                   model.grid.cells_dir(2);
    for (long c = 0; c < n_cells; ++c) {
        Vec3 cc = cell_center(c);
        if (cube0.contains(cc, 0.0) || cube1.contains(cc, 0.0))
            model.materials.pec_cells[static_cast<size_t>(c)] = true;
    }
    for (long n = 0; n < model.grid.node_count(); ++n) {
        Vec3 p = model.grid.node_position(n);
        if (cube0.contains(p, snap))
            model.electric_dirichlet.add(n, 0.0);
        else if (cube1.contains(p, snap))
            model.electric_dirichlet.add(n, 1.0);
    }

    Wire w{curve, build_wire1d(curve, s), CouplingSet{}, Vec(), Vec()};
    double r_cpl = resolve_r_cpl(cfg, model.grid, -1, &curve, height);
    w.coupling = build_coupling(model.grid, curve, s, r_cpl, cfg.r_bar, cfg.effective_r0(),
                                cfg.n_theta, cfg.theta0);
    w.m_sigma_bar = wire_mass_matrix(w.grid1d, cfg.effective_sigma_bar());
    w.m_lambda_bar = wire_mass_matrix(w.grid1d, cfg.effective_sigma_bar());
    model.wires.push_back(std::move(w));
    return model;
}

BentWireSolution solve_bent_wire(const ExperimentConfig& cfg, int n1d) {
    Model model = build_bent_wire_model(cfg, n1d);
    ElectricSystem esys = assemble_electric(model);
    ElectrothermalState state;
    solve_electric(state, esys, model);

    BentWireSolution out{std::move(model), state.phi, state.phi_bar.front(), 0.0, 0.0, 0.0, 0.0};
    out.h = out.model.grid.average_edge_length();
    out.h_bar = 1.0 / double(n1d - 1);
    out.kappa_max = frenet_curvature_max(out.model.wires.front().curve);
    out.r_cpl = out.model.wires.front().coupling.r_cpl;
    return out;
}

// ---------------------------------------------------------------------------
// chip package
// ---------------------------------------------------------------------------

ChipLayout chip_layout(const ExperimentConfig& cfg) {
    ChipLayout layout;
    layout.package = cfg.domain_size;
    const double Lx = layout.package.x, Ly = layout.package.y, Lz = layout.package.z;
    const double zc = 0.5 * Lz;       // pads and chip centered in z
    const double pad_h = 1e-4;        // pad/chip height
    const double z0 = zc - 0.5 * pad_h, z1 = zc + 0.5 * pad_h;
    const double pad_w = 4e-4;
    const double pad_off = 5e-4;      // pad center distance from the rim
    const double chip_half = 8e-4;

    layout.chip = Box{{0.5 * Lx - chip_half, 0.5 * Ly - chip_half, z0},
                      {0.5 * Lx + chip_half, 0.5 * Ly + chip_half, z1}};

    const double wire_h = 1e-4;
    const double bond_in = 1e-4; // bond point inset into the chip
    std::vector<double> lanes{0.25 * Ly, 0.5 * Ly, 0.75 * Ly};

    auto add_pad = [&](double cx, double cy) {
        layout.pads.push_back(Box{{cx - 0.5 * pad_w, cy - 0.5 * pad_w, z0},
                                  {cx + 0.5 * pad_w, cy + 0.5 * pad_w, z1}});
    };
    auto add_wire = [&](const Vec3& from, const Vec3& to) {
        WireConfig w;
        w.kind = "bezier";
        w.from = from;
        w.to = to;
        w.height = wire_h;
        w.bend = {0.0, 0.0, 1.0};
        layout.wires.push_back(w);
    };

    // left/right sides (wires run in x), then bottom/top (wires run in y)
    for (double lane : lanes) {
        add_pad(pad_off, lane);
        add_wire({pad_off, lane, z1}, {layout.chip.lo.x + bond_in, lane, z1});
    }
    for (double lane : lanes) {
        add_pad(Lx - pad_off, lane);
        add_wire({Lx - pad_off, lane, z1}, {layout.chip.hi.x - bond_in, lane, z1});
    }
    for (double lane : lanes) {
        add_pad(lane, pad_off);
        add_wire({lane, pad_off, z1}, {lane, layout.chip.lo.y + bond_in, z1});
    }
    for (double lane : lanes) {
        add_pad(lane, Ly - pad_off);
        add_wire({lane, Ly - pad_off, z1}, {lane, layout.chip.hi.y - bond_in, z1});
    }
    layout.mirror_pairs = {{0, 3}, {1, 4}, {2, 5}, {6, 9}, {7, 10}, {8, 11}};
    return layout;
}

Model build_chip_model(const ExperimentConfig& cfg) {
    ChipLayout layout = chip_layout(cfg);
    const double Lx = layout.package.x, Ly = layout.package.y, Lz = layout.package.z;
    const double snap = 1e-12 * Lx;
    const double cap = 9e-5;

    std::vector<double> s = equidistant_s(cfg.n1d);
    std::vector<double> xs{0.0, Lx}, ys{0.0, Ly}, zs{0.0, Lz};
    auto add_box = [&](const Box& b) {
        xs.insert(xs.end(), {b.lo.x, b.hi.x});
        ys.insert(ys.end(), {b.lo.y, b.hi.y});
        zs.insert(zs.end(), {b.lo.z, b.hi.z});
    };
    add_box(layout.chip);
    for (const Box& p : layout.pads)
        add_box(p);
    for (const WireConfig& w : layout.wires) {
        WireCurve c = WireCurve::bezier(w.from, w.to, w.height, w.bend);
        for (double sj : s) {
            Vec3 p = c.position(sj);
            xs.push_back(p.x);
            ys.push_back(p.y);
            zs.push_back(p.z);
        }
    }
    xs = cap_subdivide(dedup(xs, snap), cap);
    ys = cap_subdivide(dedup(ys, snap), cap);
    zs = cap_subdivide(dedup(zs, snap), 0.6 * cap);
    mirror_symmetrize(xs, Lx);
    mirror_symmetrize(ys, Ly);

    RectilinearGrid grid{Axis1D(xs), Axis1D(ys), Axis1D(zs)};
    Model model(std::move(grid));
    model.method = cfg.method;
    model.transient = cfg.transient;
    model.T_init = cfg.t_init;
    model.phi_init = 0.0;
    model.spreading = cfg.spreading;

    // insulating background, copper-like conducting regions flagged PEC
    MaterialProps cu = material_by_name("copper");
    const double sigma_ins = 1e-4, lambda_ins = 0.87, rhoc_ins = 1500.0 * 882.0;
    model.materials = MaterialField::homogeneous(model.grid, sigma_ins, lambda_ins, rhoc_ins);
    long n_cells = static_cast<long>(model.grid.cells_dir(0)) * model.grid.cells_dir(1) *
                   model.grid.cells_dir(2);
    for (long c = 0; c < n_cells; ++c) {
        int i = static_cast<int>(c % model.grid.cells_dir(0));
        long rest = c / model.grid.cells_dir(0);
        int j = static_cast<int>(rest % model.grid.cells_dir(1));
        int k = static_cast<int>(rest / model.grid.cells_dir(1));
        Vec3 cc{0.5 * (model.grid.axis(0)[i] + model.grid.axis(0)[i + 1]),
                0.5 * (model.grid.axis(1)[j] + model.grid.axis(1)[j + 1]),
                0.5 * (model.grid.axis(2)[k] + model.grid.axis(2)[k + 1])};
        bool con = layout.chip.contains(cc, 0.0);
        for (const Box& p : layout.pads)
            con = con || p.contains(cc, 0.0);
        if (con) {
            model.materials.pec_cells[static_cast<size_t>(c)] = true;
            model.materials.cell_lambda[c] = cu.lambda;
            model.materials.cell_rho_c[c] = cu.rho * cu.c;
        }
    }

    // electrodes: chip grounded, pads at the wire voltage
    for (long n = 0; n < model.grid.node_count(); ++n) {
        Vec3 p = model.grid.node_position(n);
        if (layout.chip.contains(p, snap)) {
            model.electric_dirichlet.add(n, 0.0);
            continue;
        }
        for (const Box& pad : layout.pads)
            if (pad.contains(p, snap)) {
                model.electric_dirichlet.add(n, cfg.v_bar);
                break;
            }
    }

    model.robin = make_robin_all_boundary(model.grid, model.dual, cfg.robin_h, cfg.t_inf);

    const double r0 = cfg.effective_r0();
    for (const WireConfig& wc : layout.wires) {
        WireCurve curve = WireCurve::bezier(wc.from, wc.to, wc.height, wc.bend);
        Wire w{curve, build_wire1d(curve, s), CouplingSet{}, Vec(), Vec()};
        double r_cpl = resolve_r_cpl(cfg, model.grid, -1, &curve, wc.height);
        w.coupling = build_coupling(model.grid, curve, s, r_cpl, cfg.r_bar, r0, cfg.n_theta,
                                    cfg.theta0);
        w.m_sigma_bar = wire_mass_matrix(w.grid1d, cfg.wire_area() * cu.sigma);
        w.m_lambda_bar = wire_mass_matrix(w.grid1d, cfg.wire_area() * cu.lambda);
        model.wires.push_back(std::move(w));
    }
    return model;
}

ChipResult run_chip(const ExperimentConfig& cfg, const StepCallback& on_step) {
    Model model = build_chip_model(cfg);
    std::vector<ElectrothermalState> series = run_transient(model, on_step);
    ChipResult out{std::move(model), std::move(series), 0.0, chip_layout(cfg).mirror_pairs};
    out.h = out.model.grid.average_edge_length();
    return out;
}

// ---------------------------------------------------------------------------
// studies
// ---------------------------------------------------------------------------

namespace {

void append_measure(StudyOutput& out, const std::string& name, std::vector<double>& hs,
                    std::vector<double>& errs, int level, double h, double h_bar, double value) {
    double local = std::numeric_limits<double>::quiet_NaN();
    if (!hs.empty() && value > 0.0 && errs.back() > 0.0)
        local = std::log(value / errs.back()) / std::log(h / hs.back());
    out.rows.push_back({level, h, h_bar, name, value, local});
    hs.push_back(h);
    errs.push_back(value);
}

void fit_measure(StudyOutput& out, const std::string& name, const std::vector<double>& hs,
                 const std::vector<double>& errs) {
    if (hs.size() >= 3)
        out.orders[name] = fit_order(hs, errs);
}

} // namespace

StudyOutput study_resistor(const ExperimentConfig& cfg, const std::vector<int>& layer_levels) {
    StudyOutput out;
    std::vector<double> h1, e1, h3, e3;
    int level = 0;
    for (int layers : layer_levels) {
        ResistorResult r = solve_resistor_0d2d(cfg, layers);
        append_measure(out, "eps_l2_1d", h1, e1, level, r.h, 0.0, r.eps_1d);
        append_measure(out, "eps_l2_3d", h3, e3, level, r.h, 0.0, r.eps_3d);
        ++level;
    }
    fit_measure(out, "eps_l2_1d", h1, e1);
    fit_measure(out, "eps_l2_3d", h3, e3);
    return out;
}

StudyOutput study_straight_wire(const ExperimentConfig& cfg,
                                const std::vector<int>& layer_levels) {
    StudyOutput out;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> acc;
    int level = 0;
    for (int layers : layer_levels) {
        StraightWireResult r = solve_straight_wire(cfg, layers, cfg.n1d);
        auto add = [&](const std::string& name, double v) {
            auto& [hs, es] = acc[name];
            append_measure(out, name, hs, es, level, r.h, r.h_bar, v);
        };
        add("eps_l2_3d", r.eps_3d);
        add("eps_l2_1d", r.eps_1d);
        add("eps_h1_1d", r.eps_h1_1d);
        add("delta_l2_1d", r.delta_1d);
        add("delta_h1_1d", r.delta_h1_1d);
        ++level;
    }
    for (auto& [name, he] : acc)
        fit_measure(out, name, he.first, he.second);
    return out;
}

StudyOutput study_straight_wire_1d(const ExperimentConfig& cfg, int layers,
                                   const std::vector<int>& n1d_levels) {
    StudyOutput out;
    std::vector<double> hs, es;
    int level = 0;
    for (int n1d : n1d_levels) {
        StraightWireResult r = solve_straight_wire(cfg, layers, n1d);
        // the 1D study measures against h_bar
        append_measure(out, "delta_l2_1d", hs, es, level, r.h_bar, r.h_bar, r.delta_1d);
        out.extras["h_level_" + std::to_string(level)] = r.h;
        ++level;
    }
    fit_measure(out, "delta_l2_1d", hs, es);
    return out;
}

StudyOutput study_bent_wire(const ExperimentConfig& cfg, const std::vector<int>& n1d_levels,
                            int n1d_reference) {
    StudyOutput out;
    BentWireSolution ref = solve_bent_wire(cfg, n1d_reference);
    out.extras["reference_h"] = ref.h;
    out.extras["reference_h_bar"] = ref.h_bar;
    out.extras["kappa_max"] = ref.kappa_max;
    out.extras["r_cpl"] = ref.r_cpl;

    const double d = cfg.d;
    Box omega{{0.0, 0.0, 0.0}, {0.45 * d, d, d}};

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> acc;
    int level = 0;
    for (int n1d : n1d_levels) {
        BentWireSolution sol = solve_bent_wire(cfg, n1d);
        const Wire& w = sol.model.wires.front();

        Vec ref_bar = interpolate_1d(ref.model.wires.front().grid1d.s_nodes, ref.phi_bar,
                                     w.grid1d.s_nodes);
        NormWeights nw = make_norm_weights(sol.model.grid, omega, w.grid1d);
        double d1 = error_Delta(sol.phi_bar, ref_bar, nw.d_stilde_bar);
        double dh1 = error_Delta_h1(sol.phi_bar, ref_bar, w.coupling.Ps, nw.d_s_bar);

        Vec ref_3d = interpolate_to_grid(ref.model.grid, ref.phi, sol.model.grid);
        double d3 = error_Delta(sol.phi, ref_3d, nw.d_vtilde);

        auto add = [&](const std::string& name, double v) {
            auto& [hs, es] = acc[name];
            append_measure(out, name, hs, es, level, sol.h, sol.h_bar, v);
        };
        add("Delta_l2_1d", d1);
        add("Delta_h1_1d", dh1);
        add("Delta_l2_3d", d3);
        ++level;
    }
    for (auto& [name, he] : acc)
        fit_measure(out, name, he.first, he.second);
    return out;
}

std::vector<int> default_layer_levels(Preset preset, int count) {
    std::vector<int> levels;
    double n = (preset == Preset::StraightWire) ? 4.0 : 8.0;
    double factor = (preset == Preset::StraightWire) ? 1.45 : 1.5;
    for (int i = 0; i < count; ++i) {
        int v = static_cast<int>(std::lround(n));
        if (!levels.empty() && v <= levels.back())
            v = levels.back() + 1;
        levels.push_back(v);
        n *= factor;
    }
    return levels;
}

std::vector<int> default_n1d_levels(int count) {
    std::vector<int> levels;
    int n = 4;
    for (int i = 0; i < count; ++i) {
        levels.push_back(n + 1);
        n *= 2;
    }
    return levels;
}

// ---------------------------------------------------------------------------
// artifact drivers
// ---------------------------------------------------------------------------

namespace {

void write_orders(const std::string& path, const StudyOutput& study) {
    std::ostringstream body;
    body << "measure,fitted_order\n";
    for (const auto& [name, fit] : study.orders)
        body << name << "," << format_double(fit.slope) << "\n";
    for (const auto& [name, v] : study.extras)
        body << name << "," << format_double(v) << "\n";
    std::ofstream f(path, std::ios::binary);
    f << body.str();
}

} // namespace

void run_preset(const ExperimentConfig& cfg) {
    ensure_directory(cfg.out);
    switch (cfg.preset) {
    case Preset::Resistor0d2d: {
        ResistorResult r = solve_resistor_0d2d(cfg, cfg.grid.layers);
        std::vector<ConvergenceRow> rows{
            {0, r.h, 0.0, "eps_l2_1d", r.eps_1d, std::numeric_limits<double>::quiet_NaN()},
            {0, r.h, 0.0, "eps_l2_3d", r.eps_3d, std::numeric_limits<double>::quiet_NaN()},
            {0, r.h, 0.0, "phi_bar_h", r.phi_bar_h, std::numeric_limits<double>::quiet_NaN()},
            {0, r.h, 0.0, "phi_bar_exact", r.phi_bar_exact,
             std::numeric_limits<double>::quiet_NaN()}};
        write_convergence_csv(cfg.out + "/summary.csv", rows);
        break;
    }
    case Preset::StraightWire: {
        StraightWireResult r = solve_straight_wire(cfg, cfg.grid.layers, cfg.n1d);
        Model model = build_straight_wire_model(cfg, cfg.grid.layers, cfg.n1d);
        write_rectilinear_vtk(cfg.out + "/fields.vtk", model.grid, {{"phi", r.phi}});
        write_wire_csv(cfg.out + "/wire.csv", {model.wires.front().grid1d}, {r.phi_bar},
                       {Vec::Zero(r.phi_bar.size())});
        dump_grid(cfg.out + "/grid.txt", model.grid);
        std::vector<ConvergenceRow> rows{
            {0, r.h, r.h_bar, "eps_l2_3d", r.eps_3d, std::numeric_limits<double>::quiet_NaN()},
            {0, r.h, r.h_bar, "eps_l2_1d", r.eps_1d, std::numeric_limits<double>::quiet_NaN()},
            {0, r.h, r.h_bar, "delta_l2_1d", r.delta_1d,
             std::numeric_limits<double>::quiet_NaN()}};
        write_convergence_csv(cfg.out + "/summary.csv", rows);
        break;
    }
    case Preset::BentWire: {
        BentWireSolution sol = solve_bent_wire(cfg, cfg.n1d);
        write_rectilinear_vtk(cfg.out + "/fields.vtk", sol.model.grid, {{"phi", sol.phi}});
        write_wire_csv(cfg.out + "/wire.csv", {sol.model.wires.front().grid1d}, {sol.phi_bar},
                       {Vec::Zero(sol.phi_bar.size())});
        dump_grid(cfg.out + "/grid.txt", sol.model.grid);
        break;
    }
    case Preset::ChipPackage: {
        std::vector<Wire1DGrid> grids;
        ChipResult res = run_chip(cfg, nullptr);
        for (const Wire& w : res.model.wires)
            grids.push_back(w.grid1d);
        for (size_t n = 0; n < res.series.size(); ++n) {
            const auto& st = res.series[n];
            std::string tag = cfg.out + "/step_" + std::to_string(n);
            write_rectilinear_vtk(tag + "_fields.vtk", res.model.grid,
                                  {{"phi", st.phi}, {"T", st.T}});
            write_wire_csv(tag + "_wires.csv", grids, st.phi_bar, st.T_bar);
        }
        dump_grid(cfg.out + "/grid.txt", res.model.grid);
        break;
    }
    case Preset::Custom:
        throw ConfigError("run_preset: custom preset needs run support via the study driver");
    }
}

void run_convergence_study(const ExperimentConfig& cfg) {
    ensure_directory(cfg.out);
    StudyOutput study;
    switch (cfg.preset) {
    case Preset::Resistor0d2d:
        study = study_resistor(cfg, default_layer_levels(cfg.preset, cfg.levels));
        break;
    case Preset::StraightWire:
        study = study_straight_wire(cfg, default_layer_levels(cfg.preset, cfg.levels));
        break;
    case Preset::BentWire: {
        std::vector<int> levels = default_n1d_levels(cfg.levels);
        int ref = levels.back() > 32 ? 2 * (levels.back() - 1) + 1 : 65;
        study = study_bent_wire(cfg, levels, ref);
        break;
    }
    default:
        throw ConfigError("run_convergence_study: no study for preset " +
                          preset_name(cfg.preset));
    }
    write_convergence_csv(cfg.out + "/convergence.csv", study.rows);
    write_orders(cfg.out + "/orders.csv", study);
}

} // namespace wirefit
