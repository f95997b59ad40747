#include "wirefit/config.hpp"

#include "wirefit/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace wirefit {

std::string preset_name(Preset p) {
    switch (p) {
    case Preset::Resistor0d2d: return "resistor_0d2d";
    case Preset::StraightWire: return "straight_wire";
    case Preset::BentWire: return "bent_wire";
    case Preset::ChipPackage: return "chip_package";
    case Preset::Custom: return "custom";
    }
    return "?";
}

Preset preset_from_name(const std::string& name) {
    for (Preset p : {Preset::Resistor0d2d, Preset::StraightWire, Preset::BentWire,
                     Preset::ChipPackage, Preset::Custom})
        if (preset_name(p) == name)
            return p;
    throw ConfigError("unknown preset '" + name + "'");
}

double ExperimentConfig::effective_sigma_bar() const {
    if (sigma_bar > 0.0)
        return sigma_bar;
    if (preset == Preset::ChipPackage)
        return wire_area() * material_by_name("copper").sigma;
    return 1e15 * wire_area() * sigma;
}

double ExperimentConfig::effective_r0() const {
    if (r0 > 0.0)
        return r0;
    if (preset == Preset::ChipPackage) {
        // equivalent cylinder of the package cross-section
        return std::sqrt(domain_size.x * domain_size.y / M_PI);
    }
    return std::sqrt(d * d / M_PI);
}

ExperimentConfig default_config(Preset preset) {
    ExperimentConfig c;
    c.preset = preset;
    switch (preset) {
    case Preset::Resistor0d2d:
        c.n1d = 1;
        c.grid = {GridSpec::Kind::GlobalGraded, 0.5, 8, 0.0};
        c.r_cpl = {RcplRule::Kind::MaxTransverse, 0.0};
        break;
    case Preset::StraightWire:
        c.n1d = 33;
        c.grid = {GridSpec::Kind::GlobalGraded, 0.5, 8, 0.0};
        c.r_cpl = {RcplRule::Kind::MaxTransverse, 0.0};
        // diagonal sampling: the leading interpolation error of the log
        // field cancels on the locally symmetric tensor grid
        c.n_theta = 4;
        c.theta0 = M_PI / 4.0;
        break;
    case Preset::BentWire:
        c.n1d = 33;
        c.grid = {GridSpec::Kind::Uniform, 1.0, 8, 0.0};
        c.r_cpl = {RcplRule::Kind::Curvature, 0.0};
        break;
    case Preset::ChipPackage:
        c.n1d = 4;
        c.grid = {GridSpec::Kind::Uniform, 1.0, 8, 0.0};
        c.r_cpl = {RcplRule::Kind::CurvatureChip, 0.0};
        c.transient = {10, 1.0};
        c.domain_size = {4e-3, 4e-3, 4e-4};
        break;
    case Preset::Custom:
        break;
    }
    return c;
}

namespace {

struct KeyValue {
    std::string key, value;
    int line, col;
};

std::vector<KeyValue> tokenize(const std::string& text, const std::string& origin) {
    std::vector<KeyValue> kvs;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        if (auto hash = body.find('#'); hash != std::string::npos)
            body = body.substr(0, hash);
        auto first = body.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ":" +
                              std::to_string(first + 1) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ":1: empty key");
        if (value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ":" +
                              std::to_string(eq + 2) + ": empty value for '" + key + "'");
        kvs.push_back({key, value, lineno, static_cast<int>(first + 1)});
    }
    return kvs;
}

class Validator {
public:
    explicit Validator(const std::string& origin) : origin_(origin) {}

    void error(const KeyValue& kv, const std::string& msg) {
        errors_.push_back(origin_ + ":" + std::to_string(kv.line) + ": key '" + kv.key + "': " +
                          msg);
    }
    void finish() {
        if (errors_.empty())
            return;
        std::string all = "config validation failed:";
        for (const auto& e : errors_)
            all += "\n  " + e;
        throw ConfigError(all);
    }

    double num(const KeyValue& kv) {
        try {
            size_t pos;
            double v = std::stod(kv.value, &pos);
            if (pos != kv.value.size())
                throw std::invalid_argument("");
            return v;
        } catch (...) {
            error(kv, "not a number: '" + kv.value + "'");
            return 0.0;
        }
    }
    int integer(const KeyValue& kv) {
        double v = num(kv);
        if (v != std::floor(v))
            error(kv, "not an integer: '" + kv.value + "'");
        return static_cast<int>(v);
    }
    Vec3 vec3(const KeyValue& kv) {
        std::istringstream ss(kv.value);
        Vec3 v;
        if (!(ss >> v.x >> v.y >> v.z)) {
            error(kv, "expected three numbers: '" + kv.value + "'");
            return {};
        }
        return v;
    }
    Box box(const KeyValue& kv) {
        std::istringstream ss(kv.value);
        Box b;
        if (!(ss >> b.lo.x >> b.lo.y >> b.lo.z >> b.hi.x >> b.hi.y >> b.hi.z)) {
            error(kv, "expected six numbers: '" + kv.value + "'");
            return {};
        }
        return b;
    }

private:
    std::string origin_;
    std::vector<std::string> errors_;
};

// strips "prefix.<index>." and returns the index, or -1
int indexed_key(const std::string& key, const std::string& prefix, std::string& field) {
    if (key.rfind(prefix + ".", 0) != 0)
        return -1;
    auto rest = key.substr(prefix.size() + 1);
    auto dot = rest.find('.');
    if (dot == std::string::npos)
        return -1;
    try {
        int idx = std::stoi(rest.substr(0, dot));
        field = rest.substr(dot + 1);
        return idx;
    } catch (...) {
        return -1;
    }
}

template <typename T> void grow(std::vector<T>& v, int idx) {
    if (idx >= static_cast<int>(v.size()))
        v.resize(static_cast<size_t>(idx) + 1);
}

} // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    auto kvs = tokenize(text, origin);
    Validator val(origin);

    // preset first: it selects the defaults the other keys override
    Preset preset = Preset::StraightWire;
    bool preset_seen = false;
    for (const auto& kv : kvs)
        if (kv.key == "preset") {
            try {
                preset = preset_from_name(kv.value);
                preset_seen = true;
            } catch (const ConfigError& e) {
                val.error(kv, e.what());
            }
        }
    ExperimentConfig c = default_config(preset);
    (void)preset_seen;

    for (const auto& kv : kvs) {
        const std::string& k = kv.key;
        std::string field;
        if (k == "preset") {
            continue;
        } else if (k == "out") {
            c.out = kv.value;
        } else if (k == "levels") {
            c.levels = val.integer(kv);
            if (c.levels < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "threads") {
            c.threads = val.integer(kv);
            if (c.threads < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "grid.kind") {
            if (kv.value == "uniform")
                c.grid.kind = GridSpec::Kind::Uniform;
            else if (kv.value == "global_graded")
                c.grid.kind = GridSpec::Kind::GlobalGraded;
            else if (kv.value == "local_graded")
                c.grid.kind = GridSpec::Kind::LocalGraded;
            else
                val.error(kv, "expected uniform | global_graded | local_graded");
        } else if (k == "grid.mu") {
            c.grid.mu = val.num(kv);
            if (!(c.grid.mu > 0.0) || c.grid.mu > 1.0)
                val.error(kv, "grading must lie in (0, 1]");
        } else if (k == "grid.layers") {
            c.grid.layers = val.integer(kv);
            if (c.grid.layers < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "grid.b") {
            c.grid.b = val.num(kv);
            if (!(c.grid.b > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "n1d") {
            c.n1d = val.integer(kv);
            if (c.n1d < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "n_theta") {
            c.n_theta = val.integer(kv);
            if (c.n_theta < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "theta0") {
            c.theta0 = val.num(kv);
        } else if (k == "d") {
            c.d = val.num(kv);
            if (!(c.d > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "sigma") {
            c.sigma = val.num(kv);
            if (!(c.sigma > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "r_bar") {
            c.r_bar = val.num(kv);
            if (!(c.r_bar > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "sigma_bar") {
            c.sigma_bar = val.num(kv);
            if (!(c.sigma_bar > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "lambda_bar") {
            c.lambda_bar = val.num(kv);
        } else if (k == "r0") {
            c.r0 = val.num(kv);
            if (!(c.r0 > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "r_cpl.rule") {
            if (kv.value == "absolute")
                c.r_cpl.kind = RcplRule::Kind::Absolute;
            else if (kv.value == "max_transverse")
                c.r_cpl.kind = RcplRule::Kind::MaxTransverse;
            else if (kv.value == "curvature")
                c.r_cpl.kind = RcplRule::Kind::Curvature;
            else if (kv.value == "curvature_chip")
                c.r_cpl.kind = RcplRule::Kind::CurvatureChip;
            else
                val.error(kv, "expected absolute | max_transverse | curvature | curvature_chip");
        } else if (k == "r_cpl.value") {
            c.r_cpl.value = val.num(kv);
            if (c.r_cpl.value < 0.0)
                val.error(kv, "coupling radius must be nonnegative");
        } else if (k == "joule.spreading") {
            if (kv.value == "avg")
                c.spreading = JouleSpreading::Average;
            else if (kv.value == "abs")
                c.spreading = JouleSpreading::AbsoluteX;
            else
                val.error(kv, "expected avg | abs");
        } else if (k == "solver.method") {
            if (kv.value == "direct")
                c.method = SolveMethod::Direct;
            else if (kv.value == "bicgstab")
                c.method = SolveMethod::BiCGStab;
            else
                val.error(kv, "expected direct | bicgstab");
        } else if (k == "transient.steps") {
            c.transient.steps = val.integer(kv);
            if (c.transient.steps < 1)
                val.error(kv, "must be at least 1");
        } else if (k == "transient.t_end") {
            c.transient.t_end = val.num(kv);
            if (!(c.transient.t_end > 0.0))
                val.error(kv, "must be positive");
        } else if (k == "v_bar") {
            c.v_bar = val.num(kv);
        } else if (k == "robin.h") {
            c.robin_h = val.num(kv);
            if (c.robin_h < 0.0)
                val.error(kv, "must be nonnegative");
        } else if (k == "robin.t_inf") {
            c.t_inf = val.num(kv);
        } else if (k == "t_init") {
            c.t_init = val.num(kv);
        } else if (k == "domain.size") {
            c.domain_size = val.vec3(kv);
        } else if (int idx = indexed_key(k, "wire", field); idx >= 0) {
            grow(c.wires, idx);
            WireConfig& w = c.wires[static_cast<size_t>(idx)];
            if (field == "kind") {
                if (kv.value != "segment" && kv.value != "bezier")
                    val.error(kv, "expected segment | bezier");
                else
                    w.kind = kv.value;
            } else if (field == "from")
                w.from = val.vec3(kv);
            else if (field == "to")
                w.to = val.vec3(kv);
            else if (field == "height")
                w.height = val.num(kv);
            else if (field == "bend")
                w.bend = val.vec3(kv);
            else if (field == "sigma_bar")
                w.sigma_bar = val.num(kv);
            else if (field == "lambda_bar")
                w.lambda_bar = val.num(kv);
            else
                val.error(kv, "unknown wire field '" + field + "'");
        } else if (int idx2 = indexed_key(k, "material", field); idx2 >= 0) {
            grow(c.materials, idx2);
            MaterialBoxConfig& m = c.materials[static_cast<size_t>(idx2)];
            if (field == "box")
                m.box = val.box(kv);
            else if (field == "name") {
                try {
                    MaterialProps p = material_by_name(kv.value);
                    m.sigma = p.sigma;
                    m.lambda = p.lambda;
                    m.rho = p.rho;
                    m.c = p.c;
                } catch (const std::exception& e) {
                    val.error(kv, e.what());
                }
            } else if (field == "sigma")
                m.sigma = val.num(kv);
            else if (field == "lambda")
                m.lambda = val.num(kv);
            else if (field == "rho")
                m.rho = val.num(kv);
            else if (field == "c")
                m.c = val.num(kv);
            else if (field == "pec")
                m.pec = (kv.value == "true" || kv.value == "1");
            else
                val.error(kv, "unknown material field '" + field + "'");
        } else if (int idx3 = indexed_key(k, "electrode", field); idx3 >= 0) {
            grow(c.electrodes, idx3);
            if (field == "box")
                c.electrodes[static_cast<size_t>(idx3)].box = val.box(kv);
            else if (field == "value")
                c.electrodes[static_cast<size_t>(idx3)].value = val.num(kv);
            else
                val.error(kv, "unknown electrode field '" + field + "'");
        } else {
            val.error(kv, "unknown key");
        }
    }

    // cross-field checks
    if (c.grid.kind == GridSpec::Kind::LocalGraded && !(c.grid.b > 0.0)) {
        KeyValue kv{"grid.b", "", 0, 0};
        val.error(kv, "local grading requires a positive radius grid.b");
    }
    if (c.r_cpl.kind == RcplRule::Kind::Absolute && c.r_cpl.value < 0.0) {
        KeyValue kv{"r_cpl.value", "", 0, 0};
        val.error(kv, "absolute rule requires a nonnegative radius");
    }
    val.finish();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

namespace {
std::string rcpl_rule_name(RcplRule::Kind k) {
    switch (k) {
    case RcplRule::Kind::Absolute: return "absolute";
    case RcplRule::Kind::MaxTransverse: return "max_transverse";
    case RcplRule::Kind::Curvature: return "curvature";
    case RcplRule::Kind::CurvatureChip: return "curvature_chip";
    }
    return "?";
}
std::string grid_kind_name(GridSpec::Kind k) {
    switch (k) {
    case GridSpec::Kind::Uniform: return "uniform";
    case GridSpec::Kind::GlobalGraded: return "global_graded";
    case GridSpec::Kind::LocalGraded: return "local_graded";
    }
    return "?";
}
} // namespace

std::string ExperimentConfig::serialize() const {
    std::ostringstream o;
    o << "preset = " << preset_name(preset) << "\n";
    o << "out = " << out << "\n";
    o << "levels = " << levels << "\n";
    o << "threads = " << threads << "\n";
    o << "grid.kind = " << grid_kind_name(grid.kind) << "\n";
    o << "grid.mu = " << format_double(grid.mu) << "\n";
    o << "grid.layers = " << grid.layers << "\n";
    if (grid.b > 0.0)
        o << "grid.b = " << format_double(grid.b) << "\n";
    o << "n1d = " << n1d << "\n";
    o << "n_theta = " << n_theta << "\n";
    if (theta0 != 0.0)
        o << "theta0 = " << format_double(theta0) << "\n";
    o << "d = " << format_double(d) << "\n";
    o << "sigma = " << format_double(sigma) << "\n";
    o << "r_bar = " << format_double(r_bar) << "\n";
    if (sigma_bar > 0.0)
        o << "sigma_bar = " << format_double(sigma_bar) << "\n";
    if (lambda_bar != 0.0)
        o << "lambda_bar = " << format_double(lambda_bar) << "\n";
    if (r0 > 0.0)
        o << "r0 = " << format_double(r0) << "\n";
    o << "r_cpl.rule = " << rcpl_rule_name(r_cpl.kind) << "\n";
    if (r_cpl.kind == RcplRule::Kind::Absolute)
        o << "r_cpl.value = " << format_double(r_cpl.value) << "\n";
    o << "joule.spreading = " << (spreading == JouleSpreading::Average ? "avg" : "abs") << "\n";
    o << "solver.method = " << (method == SolveMethod::Direct ? "direct" : "bicgstab") << "\n";
    o << "transient.steps = " << transient.steps << "\n";
    o << "transient.t_end = " << format_double(transient.t_end) << "\n";
    o << "v_bar = " << format_double(v_bar) << "\n";
    o << "robin.h = " << format_double(robin_h) << "\n";
    o << "robin.t_inf = " << format_double(t_inf) << "\n";
    o << "t_init = " << format_double(t_init) << "\n";
    o << "domain.size = " << format_double(domain_size.x) << " " << format_double(domain_size.y)
      << " " << format_double(domain_size.z) << "\n";
    for (size_t i = 0; i < wires.size(); ++i) {
        const WireConfig& w = wires[i];
        o << "wire." << i << ".kind = " << w.kind << "\n";
        o << "wire." << i << ".from = " << format_double(w.from.x) << " "
          << format_double(w.from.y) << " " << format_double(w.from.z) << "\n";
        o << "wire." << i << ".to = " << format_double(w.to.x) << " " << format_double(w.to.y)
          << " " << format_double(w.to.z) << "\n";
        if (w.kind == "bezier") {
            o << "wire." << i << ".height = " << format_double(w.height) << "\n";
            o << "wire." << i << ".bend = " << format_double(w.bend.x) << " "
              << format_double(w.bend.y) << " " << format_double(w.bend.z) << "\n";
        }
        if (w.sigma_bar > 0.0)
            o << "wire." << i << ".sigma_bar = " << format_double(w.sigma_bar) << "\n";
        if (w.lambda_bar > 0.0)
            o << "wire." << i << ".lambda_bar = " << format_double(w.lambda_bar) << "\n";
    }
    for (size_t i = 0; i < materials.size(); ++i) {
        const MaterialBoxConfig& m = materials[i];
        o << "material." << i << ".box = " << format_double(m.box.lo.x) << " "
          << format_double(m.box.lo.y) << " " << format_double(m.box.lo.z) << " "
          << format_double(m.box.hi.x) << " " << format_double(m.box.hi.y) << " "
          << format_double(m.box.hi.z) << "\n";
        o << "material." << i << ".sigma = " << format_double(m.sigma) << "\n";
        o << "material." << i << ".lambda = " << format_double(m.lambda) << "\n";
        o << "material." << i << ".rho = " << format_double(m.rho) << "\n";
        o << "material." << i << ".c = " << format_double(m.c) << "\n";
        if (m.pec)
            o << "material." << i << ".pec = true\n";
    }
    for (size_t i = 0; i < electrodes.size(); ++i) {
        const ElectrodeBoxConfig& e = electrodes[i];
        o << "electrode." << i << ".box = " << format_double(e.box.lo.x) << " "
          << format_double(e.box.lo.y) << " " << format_double(e.box.lo.z) << " "
          << format_double(e.box.hi.x) << " " << format_double(e.box.hi.y) << " "
          << format_double(e.box.hi.z) << "\n";
        o << "electrode." << i << ".value = " << format_double(e.value) << "\n";
    }
    return o.str();
}

} // namespace wirefit
