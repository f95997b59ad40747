#pragma once

#include "wirefit/grid.hpp"
#include "wirefit/wire1d.hpp"

#include <map>
#include <string>
#include <vector>

namespace wirefit {

/// Shortest decimal form that round-trips a double.
std::string format_double(double v);

/// Legacy-text structured rectilinear field file: coordinates plus named
/// nodal scalars, x-fastest point order, LF endings, no timestamps.
void write_rectilinear_vtk(const std::string& path, const RectilinearGrid& grid,
                           const std::vector<std::pair<std::string, Vec>>& fields);

/// Reads segments written by write_rectilinear_vtk (round-trip checks).
struct RectilinearField {
    std::vector<double> x, y, z;
    std::vector<std::pair<std::string, Vec>> fields;
};
RectilinearField read_rectilinear_vtk(const std::string& path);

/// 1D wire profiles: one row per (wire, node) with s, arc length and the
/// nodal fields.
void write_wire_csv(const std::string& path, const std::vector<Wire1DGrid>& wires,
                    const std::vector<Vec>& phi_bar, const std::vector<Vec>& t_bar);

/// Convergence-study table: level, h, h_bar, measure, value, local_order.
struct ConvergenceRow {
    int level;
    double h;
    double h_bar;
    std::string measure;
    double value;
    double local_order; // NaN for the first level of a measure
};
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

/// Plain-text axis dump (three coordinate lists).
void dump_grid(const std::string& path, const RectilinearGrid& grid);

/// Sparse operator as coordinate triplets (debugging aid).
void dump_sparse(const std::string& path, const SpMat& m);

void ensure_directory(const std::string& path);

} // namespace wirefit
