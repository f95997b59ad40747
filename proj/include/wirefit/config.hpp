#pragma once

#include "wirefit/analysis.hpp"
#include "wirefit/solver.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wirefit {

/// Configuration problems carry exit code 2 at the CLI.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Preset { Resistor0d2d, StraightWire, BentWire, ChipPackage, Custom };
std::string preset_name(Preset p);
Preset preset_from_name(const std::string& name);

struct GridSpec {
    enum class Kind { Uniform, GlobalGraded, LocalGraded };
    Kind kind = Kind::GlobalGraded;
    double mu = 0.5;
    int layers = 8;
    double b = 0.0; // local grading radius
};

struct RcplRule {
    enum class Kind {
        Absolute,      // fixed value in meters
        MaxTransverse, // largest edge perpendicular to the wire
        Curvature,     // 1e-2 / max Frenet curvature
        CurvatureChip  // 1e-4 * H^2 * max curvature
    };
    Kind kind = Kind::MaxTransverse;
    double value = 0.0;
};

struct WireConfig {
    std::string kind = "segment"; // segment | bezier
    Vec3 from, to;
    double height = 0.0;
    Vec3 bend{0.0, 1.0, 0.0};
    double sigma_bar = 0.0;  // S m
    double lambda_bar = 0.0; // W m / K
};

struct MaterialBoxConfig {
    Box box;
    double sigma = 0.0, lambda = 0.0, rho = 0.0, c = 0.0;
    bool pec = false;
};

struct ElectrodeBoxConfig {
    Box box;
    double value = 0.0;
};

/// Fully-validated experiment description with preset defaults applied.
struct ExperimentConfig {
    Preset preset = Preset::StraightWire;
    std::string out = "out";
    int levels = 4;
    int threads = 1;

    GridSpec grid;
    int n1d = 33;
    int n_theta = 8;
    double theta0 = 0.0; // angular offset of the circle quadrature

    double d = 1.0;         // cube side (model problems)
    double sigma = 1.0;     // background conductivity
    double r_bar = 1e-6;    // wire radius
    double sigma_bar = 0.0; // lumped wire conductivity, 0 = preset default
    double lambda_bar = 0.0;
    double r0 = 0.0; // reference radius, 0 = sqrt(d^2/pi)

    RcplRule r_cpl;
    JouleSpreading spreading = JouleSpreading::Average;
    SolveMethod method = SolveMethod::Direct;
    TransientConfig transient{10, 1.0};

    double v_bar = 0.1;   // chip wire voltage
    double robin_h = 25.0;
    double t_inf = 300.0;
    double t_init = 300.0;

    std::vector<WireConfig> wires;            // custom preset
    std::vector<MaterialBoxConfig> materials; // custom preset
    std::vector<ElectrodeBoxConfig> electrodes;
    Vec3 domain_size{1.0, 1.0, 1.0};

    double wire_area() const { return M_PI * r_bar * r_bar; }
    double effective_sigma_bar() const;
    double effective_r0() const;

    std::string serialize() const;
};

ExperimentConfig default_config(Preset preset);

/// Parses and validates the key-value config file. Parse errors report
/// line and column; semantic validation reports every violation at once.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

} // namespace wirefit
