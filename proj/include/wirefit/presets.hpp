#pragma once

#include "wirefit/config.hpp"
#include "wirefit/io.hpp"

#include <map>
#include <optional>

namespace wirefit {

/// Axis for one model-problem direction per the configured grid family:
/// uniform, globally graded toward x0, or locally graded around x0 on top
/// of the uniform axis.
Axis1D model_axis(const GridSpec& spec, double lo, double hi, double x0);

// ---------------------------------------------------------------------------
// 0D-2D brick resistor with external lumped circuit
// ---------------------------------------------------------------------------
struct ResistorResult {
    double h = 0.0;      // average edge length over x/y edges
    double r_cpl = 0.0;
    double phi_bar_h = 0.0;
    double phi_bar_exact = 0.0;
    double eps_1d = 0.0;
    double eps_3d = 0.0;
};
ResistorResult solve_resistor_0d2d(const ExperimentConfig& cfg, int layers);

// ---------------------------------------------------------------------------
// straight wire through the cube center, manufactured boundary data
// ---------------------------------------------------------------------------
struct StraightWireResult {
    double h = 0.0;
    double h_bar = 0.0;
    double r_cpl = 0.0;
    double eps_3d = 0.0;
    double eps_1d = 0.0;
    double eps_h1_1d = 0.0;
    double delta_1d = 0.0;
    double delta_h1_1d = 0.0;
    Vec phi;
    Vec phi_bar;
};
StraightWireResult solve_straight_wire(const ExperimentConfig& cfg, int layers, int n1d,
                                       std::optional<double> r_cpl_override = std::nullopt);

/// Straight-wire model on its grid (shared by the penalty experiments).
Model build_straight_wire_model(const ExperimentConfig& cfg, int layers, int n1d,
                                std::optional<double> r_cpl_override = std::nullopt);

// ---------------------------------------------------------------------------
// bent Bezier wire between PEC electrode cubes
// ---------------------------------------------------------------------------
struct BentWireSolution {
    Model model;
    Vec phi;
    Vec phi_bar;
    double h = 0.0;
    double h_bar = 0.0;
    double kappa_max = 0.0;
    double r_cpl = 0.0;
};
BentWireSolution solve_bent_wire(const ExperimentConfig& cfg, int n1d);
Model build_bent_wire_model(const ExperimentConfig& cfg, int n1d);

// ---------------------------------------------------------------------------
// chip package: 12 bond wires, transient electrothermal run
// ---------------------------------------------------------------------------
struct ChipLayout {
    Vec3 package;                 // box extents
    Box chip;                     // central conducting region
    std::vector<Box> pads;        // 12 contact pads
    std::vector<WireConfig> wires; // pad -> chip bond wires
    std::vector<std::pair<int, int>> mirror_pairs; // geometrically mirrored wires
};
ChipLayout chip_layout(const ExperimentConfig& cfg);

struct ChipResult {
    Model model;
    std::vector<ElectrothermalState> series;
    double h = 0.0;
    std::vector<std::pair<int, int>> mirror_pairs;
};
Model build_chip_model(const ExperimentConfig& cfg);
ChipResult run_chip(const ExperimentConfig& cfg, const StepCallback& on_step = nullptr);

// ---------------------------------------------------------------------------
// convergence studies
// ---------------------------------------------------------------------------
struct StudyOutput {
    std::vector<ConvergenceRow> rows;
    std::map<std::string, OrderFit> orders;  // per error measure
    std::map<std::string, double> extras;    // named scalar results
};

StudyOutput study_resistor(const ExperimentConfig& cfg, const std::vector<int>& layer_levels);
StudyOutput study_straight_wire(const ExperimentConfig& cfg, const std::vector<int>& layer_levels);
/// 1D refinement at fixed 3D grid: measures delta_l2_1d against h_bar.
StudyOutput study_straight_wire_1d(const ExperimentConfig& cfg, int layers,
                                   const std::vector<int>& n1d_levels);
StudyOutput study_bent_wire(const ExperimentConfig& cfg, const std::vector<int>& n1d_levels,
                            int n1d_reference);

/// Default level ladders.
std::vector<int> default_layer_levels(Preset preset, int count);
std::vector<int> default_n1d_levels(int count);

/// Runs the configured preset, writing fields/CSV artifacts under cfg.out.
void run_preset(const ExperimentConfig& cfg);
/// Runs the preset's convergence study, writing the CSV table and order
/// summary under cfg.out.
void run_convergence_study(const ExperimentConfig& cfg);

} // namespace wirefit
