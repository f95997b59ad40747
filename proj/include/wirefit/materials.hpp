#pragma once

#include "wirefit/grid.hpp"
#include "wirefit/wire1d.hpp"

#include <functional>
#include <vector>

namespace wirefit {

/// Per-cell bulk material data plus per-wire lumped coefficients.
/// PEC regions are flagged by the mask and handled by node merging in the
/// assembly, never by large conductivity values.
struct MaterialField {
    Vec cell_sigma;  // S/m
    Vec cell_lambda; // W/(K m)
    Vec cell_rho_c;  // J/(K m^3)
    std::vector<bool> pec_cells;

    // semi-implicit hook: when set, run_transient re-evaluates the cell
    // fields from the previous temperature before each step; all shipped
    // experiments leave these empty (constant materials)
    std::function<double(long cell, double T)> sigma_of_T;
    std::function<double(long cell, double T)> lambda_of_T;

    static MaterialField homogeneous(const RectilinearGrid& grid, double sigma, double lambda,
                                     double rho_c);
};

/// Named material presets.
struct MaterialProps {
    double sigma;  // S/m
    double lambda; // W/(K m)
    double rho;    // kg/m^3
    double c;      // J/(K kg)
};
MaterialProps material_by_name(const std::string& name); // "copper", ...

/// Diagonal conductance matrix entry l = alpha_avg * |A~_l| / |L_l| with
/// the dual-facet-area-weighted arithmetic mean of the <= 4 cells sharing
/// edge l.
enum class Conductivity { Sigma, Lambda };
Vec edge_conductance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const Vec& cellvals);
Vec edge_conductance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const MaterialField& mat, Conductivity which);

/// Diagonal thermal capacitance, entry k = (rho c)_avg * |V~_k| with the
/// volume-weighted mean over the <= 8 cells at node k.
Vec node_capacitance_matrix(const RectilinearGrid& grid, const DualMeasures& dual,
                            const Vec& cell_rho_c);

/// 1D wire mass matrix, entry j = alpha_bar_j / |L_j|.
Vec wire_mass_matrix(const Wire1DGrid& wire, const Vec& alpha_bar);
Vec wire_mass_matrix(const Wire1DGrid& wire, double alpha_bar);

/// 1D transfer matrix, entry j = beta_bar_j * |L~_j|.
Vec wire_beta_matrix(const Wire1DGrid& wire, const Vec& beta_bar);
Vec wire_beta_matrix(const Wire1DGrid& wire, double beta_bar);

} // namespace wirefit
