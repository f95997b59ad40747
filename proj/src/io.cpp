#include "wirefit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wirefit {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // trim to the shortest representation that still round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[32];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v)
            return probe;
    }
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary: LF endings everywhere
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

void write_coords(std::ofstream& f, const char* name, const Axis1D& axis) {
    f << name << " " << axis.size() << " double\n";
    for (int i = 0; i < axis.size(); ++i)
        f << format_double(axis[i]) << ((i + 1 == axis.size()) ? "\n" : " ");
}

} // namespace

void write_rectilinear_vtk(const std::string& path, const RectilinearGrid& grid,
                           const std::vector<std::pair<std::string, Vec>>& fields) {
    auto f = open_out(path);
    f << "# vtk DataFile Version 3.0\n";
    f << "wirefit fields\n";
    f << "ASCII\n";
    f << "DATASET RECTILINEAR_GRID\n";
    f << "DIMENSIONS " << grid.points(0) << " " << grid.points(1) << " " << grid.points(2) << "\n";
    write_coords(f, "X_COORDINATES", grid.axis(0));
    write_coords(f, "Y_COORDINATES", grid.axis(1));
    write_coords(f, "Z_COORDINATES", grid.axis(2));
    f << "POINT_DATA " << grid.node_count() << "\n";
    for (const auto& [name, v] : fields) {
        if (v.size() != grid.node_count())
            throw std::invalid_argument("write_rectilinear_vtk: field size mismatch for " + name);
        f << "SCALARS " << name << " double 1\n";
        f << "LOOKUP_TABLE default\n";
        for (long i = 0; i < v.size(); ++i)
            f << format_double(v[i]) << ((i + 1 == v.size()) ? "\n" : " ");
    }
}

RectilinearField read_rectilinear_vtk(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "'");
    RectilinearField out;
    std::string tok;
    long nx = 0, ny = 0, nz = 0;
    while (f >> tok) {
        if (tok == "DIMENSIONS") {
            f >> nx >> ny >> nz;
        } else if (tok == "X_COORDINATES" || tok == "Y_COORDINATES" || tok == "Z_COORDINATES") {
            long n;
            std::string type;
            f >> n >> type;
            std::vector<double>& dst =
                (tok[0] == 'X') ? out.x : (tok[0] == 'Y') ? out.y : out.z;
            dst.resize(static_cast<size_t>(n));
            for (auto& v : dst)
                f >> v;
        } else if (tok == "SCALARS") {
            std::string name, type;
            int comps;
            f >> name >> type >> comps;
            f >> tok >> tok; // LOOKUP_TABLE default
            Vec v(nx * ny * nz);
            for (long i = 0; i < v.size(); ++i)
                f >> v[i];
            out.fields.emplace_back(name, std::move(v));
        }
    }
    return out;
}

void write_wire_csv(const std::string& path, const std::vector<Wire1DGrid>& wires,
                    const std::vector<Vec>& phi_bar, const std::vector<Vec>& t_bar) {
    auto f = open_out(path);
    f << "wire,s,arc_length,phi_bar,T_bar\n";
    for (size_t w = 0; w < wires.size(); ++w) {
        double arc = 0.0;
        for (int j = 0; j < wires[w].node_count(); ++j) {
            if (j > 0)
                arc += wires[w].element_arclen[static_cast<size_t>(j) - 1];
            double pb = (w < phi_bar.size() && phi_bar[w].size() > j) ? phi_bar[w][j] : 0.0;
            double tb = (w < t_bar.size() && t_bar[w].size() > j) ? t_bar[w][j] : 0.0;
            f << w << "," << format_double(wires[w].s_nodes[static_cast<size_t>(j)]) << ","
              << format_double(arc) << "," << format_double(pb) << "," << format_double(tb)
              << "\n";
        }
    }
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
    auto f = open_out(path);
    f << "level,h,h_bar,measure,value,local_order\n";
    for (const auto& r : rows) {
        f << r.level << "," << format_double(r.h) << "," << format_double(r.h_bar) << ","
          << r.measure << "," << format_double(r.value) << ",";
        if (std::isnan(r.local_order))
            f << "";
        else
            f << format_double(r.local_order);
        f << "\n";
    }
}

void dump_grid(const std::string& path, const RectilinearGrid& grid) {
    auto f = open_out(path);
    const char* names[3] = {"x", "y", "z"};
    for (int d = 0; d < 3; ++d) {
        f << names[d];
        for (int i = 0; i < grid.points(d); ++i)
            f << " " << format_double(grid.axis(d)[i]);
        f << "\n";
    }
}

void dump_sparse(const std::string& path, const SpMat& m) {
    auto f = open_out(path);
    f << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    for (int c = 0; c < m.outerSize(); ++c)
        for (SpMat::InnerIterator it(m, c); it; ++it)
            f << it.row() << " " << it.col() << " " << format_double(it.value()) << "\n";
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec)
        throw std::runtime_error("cannot create directory '" + path + "': " + ec.message());
}

} // namespace wirefit
