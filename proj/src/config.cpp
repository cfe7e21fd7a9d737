#include "acsim/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "acsim/errors.hpp"

namespace acsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& src, int line, const std::string& what) {
    throw ConfigError(src + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& src, int line, const std::string& key,
                    const std::string& v) {
    double out = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    const auto res = std::from_chars(b, e, out);
    if (res.ec != std::errc{} || res.ptr != e)
        fail(src, line, "cannot parse number for key '" + key + "': '" + v + "'");
    return out;
}

int parse_int(const std::string& src, int line, const std::string& key,
              const std::string& v) {
    int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(src, line, "cannot parse integer for key '" + key + "': '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& src, int line, const std::string& key,
                        const std::string& v) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(src, line,
             "cannot parse unsigned integer for key '" + key + "': '" + v + "'");
    return out;
}

bool parse_bool(const std::string& src, int line, const std::string& key,
                const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(src, line, "cannot parse boolean for key '" + key + "': '" + v + "'");
}

InitialShape parse_shape(const std::string& src, int line, const std::string& key,
                         const std::string& v) {
    if (v == "zero") return InitialShape::zero;
    if (v == "constant") return InitialShape::constant;
    if (v == "gaussian") return InitialShape::gaussian;
    fail(src, line,
         "unknown shape for key '" + key + "': '" + v +
             "' (expected zero, constant, or gaussian)");
}

std::string shape_name(InitialShape s) {
    switch (s) {
        case InitialShape::zero: return "zero";
        case InitialShape::constant: return "constant";
        case InitialShape::gaussian: return "gaussian";
    }
    return "zero";
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Field sample_initial(const Grid& g, InitialShape shape, double amp, double center,
                     double width) {
    Field f = Field::zeros(g.nx, 0.0);
    switch (shape) {
        case InitialShape::zero:
            break;
        case InitialShape::constant:
            std::fill(f.values.begin(), f.values.end(), amp);
            break;
        case InitialShape::gaussian:
            for (int j = 0; j < g.nx; ++j) {
                const double u = (g.x(j) - center) / width;
                f.values[static_cast<size_t>(j)] = amp * std::exp(-u * u);
            }
            break;
    }
    return f;
}

double initial_sup(InitialShape shape, double amp) {
    return shape == InitialShape::zero ? 0.0 : std::abs(amp);
}

}  // namespace

RunConfig RunConfig::parse_text(const std::string& text,
                                const std::string& source_name) {
    RunConfig cfg;
    std::map<std::string, std::function<void(int, const std::string&)>> setters;
    const auto& src = source_name;
    auto set_d = [&](const char* key, double& slot) {
        setters[key] = [&slot, key, &src](int line, const std::string& v) {
            slot = parse_double(src, line, key, v);
        };
    };
    auto set_i = [&](const char* key, int& slot) {
        setters[key] = [&slot, key, &src](int line, const std::string& v) {
            slot = parse_int(src, line, key, v);
        };
    };
    auto set_u = [&](const char* key, std::uint64_t& slot) {
        setters[key] = [&slot, key, &src](int line, const std::string& v) {
            slot = parse_u64(src, line, key, v);
        };
    };
    auto set_shape = [&](const char* key, InitialShape& slot) {
        setters[key] = [&slot, key, &src](int line, const std::string& v) {
            slot = parse_shape(src, line, key, v);
        };
    };

    set_d("half_width", cfg.half_width);
    set_i("nx", cfg.nx);
    set_d("dt", cfg.dt);
    set_i("nt", cfg.nt);
    set_d("lambda", cfg.lambda);
    set_d("beta", cfg.beta);
    set_d("cutoff_plateau", cfg.cutoff_plateau);
    set_d("cutoff_ramp", cfg.cutoff_ramp);
    set_d("alpha", cfg.alpha);
    set_d("tolerance", cfg.tolerance);
    set_i("max_iterations", cfg.max_iterations);
    set_u("seed1", cfg.seed1);
    set_u("seed2", cfg.seed2);
    setters["with_noise"] = [&cfg, &src](int line, const std::string& v) {
        cfg.with_noise = parse_bool(src, line, "with_noise", v);
    };
    setters["horizon"] = [&cfg, &src](int line, const std::string& v) {
        cfg.horizon = parse_double(src, line, "horizon", v);
    };
    set_shape("initial_shape1", cfg.initial_shape1);
    set_d("initial_amplitude1", cfg.initial_amplitude1);
    set_d("initial_center1", cfg.initial_center1);
    set_d("initial_width1", cfg.initial_width1);
    set_shape("initial_shape2", cfg.initial_shape2);
    set_d("initial_amplitude2", cfg.initial_amplitude2);
    set_d("initial_center2", cfg.initial_center2);
    set_d("initial_width2", cfg.initial_width2);
    setters["out_dir"] = [&cfg](int, const std::string& v) { cfg.out_dir = v; };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(source_name, line, "expected key = value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(source_name, line, "empty key");
        const auto it = setters.find(key);
        if (it == setters.end())
            fail(source_name, line, "unknown key '" + key + "'");
        if (!seen.insert(key).second)
            fail(source_name, line, "duplicate key '" + key + "'");
        it->second(line, value);
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

std::string RunConfig::emit() const {
    std::ostringstream out;
    out << "# grid\n";
    out << "half_width = " << fmt_double(half_width) << "\n";
    out << "nx = " << nx << "\n";
    out << "dt = " << fmt_double(dt) << "\n";
    out << "nt = " << nt << "\n";
    out << "# model\n";
    out << "lambda = " << fmt_double(lambda) << "\n";
    out << "beta = " << fmt_double(beta) << "\n";
    out << "cutoff_plateau = " << fmt_double(cutoff_plateau) << "\n";
    out << "cutoff_ramp = " << fmt_double(cutoff_ramp) << "\n";
    out << "# measure and solver\n";
    out << "alpha = " << fmt_double(alpha) << "\n";
    out << "tolerance = " << fmt_double(tolerance) << "\n";
    out << "max_iterations = " << max_iterations << "\n";
    out << "# seeds and noise\n";
    out << "seed1 = " << seed1 << "\n";
    out << "seed2 = " << seed2 << "\n";
    out << "with_noise = " << (with_noise ? "true" : "false") << "\n";
    if (horizon) out << "horizon = " << fmt_double(*horizon) << "\n";
    out << "# initial data\n";
    out << "initial_shape1 = " << shape_name(initial_shape1) << "\n";
    out << "initial_amplitude1 = " << fmt_double(initial_amplitude1) << "\n";
    out << "initial_center1 = " << fmt_double(initial_center1) << "\n";
    out << "initial_width1 = " << fmt_double(initial_width1) << "\n";
    out << "initial_shape2 = " << shape_name(initial_shape2) << "\n";
    out << "initial_amplitude2 = " << fmt_double(initial_amplitude2) << "\n";
    out << "initial_center2 = " << fmt_double(initial_center2) << "\n";
    out << "initial_width2 = " << fmt_double(initial_width2) << "\n";
    out << "# output\n";
    out << "out_dir = " << out_dir << "\n";
    return out.str();
}

void RunConfig::validate() const {
    auto require = [](bool ok, const std::string& constraint) {
        if (!ok) throw ConfigError("config validation: " + constraint);
    };
    require(half_width > 0.0, "half_width must be positive");
    require(nx >= 2, "nx must be at least 2");
    require(dt > 0.0, "dt must be positive");
    require(nt >= 1, "nt must be at least 1");
    require(std::isfinite(half_width) && std::isfinite(dt),
            "grid extents must be finite");
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be nonnegative");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be at least 1");
    require(cutoff_plateau >= 0.0, "cutoff_plateau must be nonnegative");
    require(cutoff_ramp > 0.0, "cutoff_ramp must be positive");
    require(half_width > cutoff_plateau + cutoff_ramp,
            "half_width must exceed the cutoff support a + w");
    require(alpha > 0.0, "alpha must be positive");
    require(tolerance > 0.0, "tolerance must be positive");
    require(max_iterations >= 1, "max_iterations must be at least 1");
    if (horizon) {
        require(*horizon > 0.0, "horizon must be positive");
        require(*horizon <= nt * dt * (1.0 + 1e-9),
                "horizon must not exceed the grid horizon nt * dt");
    }
    require(initial_width1 > 0.0 && initial_width2 > 0.0,
            "initial profile widths must be positive");
    require(std::isfinite(initial_amplitude1) && std::isfinite(initial_amplitude2),
            "initial amplitudes must be finite");

    const double M = std::max(initial_sup(initial_shape1, initial_amplitude1),
                              initial_sup(initial_shape2, initial_amplitude2));
    const double bound = 0.5 / (3.0 * M * M + 1.0 + 2.0 * lambda);
    require(dt <= bound * (1.0 + 1e-12),
            "dt must stay below the stability bound 0.5/(3 M^2 + 1 + 2 lambda) "
            "for the initial data size M = " + fmt_double(M));
    require(!out_dir.empty(), "out_dir must not be empty");
}

Grid RunConfig::make_grid() const { return Grid(half_width, nx, dt, nt); }

ModelParams RunConfig::make_params(const Grid& g) const {
    ModelParams params;
    params.lambda = lambda;
    params.beta = beta;
    params.cutoff = CutoffSpec(cutoff_plateau, cutoff_ramp);
    params.initial_data = {
        sample_initial(g, initial_shape1, initial_amplitude1, initial_center1,
                       initial_width1),
        sample_initial(g, initial_shape2, initial_amplitude2, initial_center2,
                       initial_width2)};
    return params;
}

double RunConfig::study_horizon() const {
    return horizon ? *horizon : nt * dt;
}

}  // namespace acsim
