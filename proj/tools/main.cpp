#include "wirefit/presets.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

wirefit::ExperimentConfig make_config(const std::string& config_path, const std::string& preset,
                                      const std::string& out, int levels, int threads) {
    wirefit::ExperimentConfig cfg;
    if (!config_path.empty())
        cfg = wirefit::load_config(config_path);
    else if (!preset.empty())
        cfg = wirefit::default_config(wirefit::preset_from_name(preset));
    else
        throw wirefit::ConfigError("either --config or --preset is required");
    if (!preset.empty())
        cfg.preset = wirefit::preset_from_name(preset);
    if (!out.empty())
        cfg.out = out;
    if (levels > 0)
        cfg.levels = levels;
    if (threads > 0)
        cfg.threads = threads;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wirefit: coupled 1D-3D electrothermal field solver on dual rectilinear grids"};
    app.require_subcommand(1);

    std::string config_path, preset, out;
    int levels = 0, threads = 0;
    app.add_option("--config", config_path, "config file (key = value text)");
    app.add_option("--preset", preset,
                   "preset name: resistor_0d2d | straight_wire | bent_wire | chip_package");
    app.add_option("--out", out, "output directory");
    app.add_option("--levels", levels, "number of study levels");
    app.add_option("--threads", threads, "worker threads for study levels");

    auto* run = app.add_subcommand("run", "run one experiment and write field/profile artifacts");
    auto* study = app.add_subcommand("study", "run a convergence study and write the CSV table");
    auto* info = app.add_subcommand("info", "print the resolved configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        wirefit::ExperimentConfig cfg = make_config(config_path, preset, out, levels, threads);
        if (run->parsed()) {
            wirefit::run_preset(cfg);
            std::cout << "artifacts written to " << cfg.out << "\n";
        } else if (study->parsed()) {
            wirefit::run_convergence_study(cfg);
            std::cout << "study written to " << cfg.out << "\n";
        } else if (info->parsed()) {
            std::cout << cfg.serialize();
        }
    } catch (const wirefit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
