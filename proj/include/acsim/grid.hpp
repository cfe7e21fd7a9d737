#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsim {

/// Uniform grid on [-L, L) x [0, nt*dt]. Fields sampled at x_j = -L + j*dx,
/// j = 0..nx-1, with dx = 2L/nx; everything outside is treated as zero.
struct Grid {
    double half_width = 0.0;
    int nx = 0;
    double dx = 0.0;
    double dt = 0.0;
    int nt = 0;

    Grid() = default;
    Grid(double half_width_, int nx_, double dt_, int nt_)
        : half_width(half_width_), nx(nx_), dt(dt_), nt(nt_) {
        if (!(half_width > 0.0))
            throw std::invalid_argument("grid: half_width must be positive");
        if (nx < 2) throw std::invalid_argument("grid: nx must be at least 2");
        if (!(dt > 0.0)) throw std::invalid_argument("grid: dt must be positive");
        if (nt < 1) throw std::invalid_argument("grid: nt must be at least 1");
        dx = 2.0 * half_width / nx;
    }

    double x(int j) const { return -half_width + j * dx; }
    double t(int k) const { return k * dt; }
    double horizon() const { return nt * dt; }

    /// Index of the grid point nearest to x (clamped to the grid).
    int index_of(double xq) const {
        int j = static_cast<int>(std::lround((xq + half_width) / dx));
        if (j < 0) j = 0;
        if (j >= nx) j = nx - 1;
        return j;
    }

    bool same_layout(const Grid& o) const {
        return nx == o.nx && half_width == o.half_width && dt == o.dt;
    }
};

/// Spatial profile at a fixed time.
struct Field {
    std::vector<double> values;
    double time_label = 0.0;

    Field() = default;
    Field(std::vector<double> v, double t) : values(std::move(v)), time_label(t) {}

    static Field zeros(int nx, double t = 0.0) {
        return Field(std::vector<double>(static_cast<size_t>(nx), 0.0), t);
    }
    static Field constant(int nx, double c, double t = 0.0) {
        return Field(std::vector<double>(static_cast<size_t>(nx), c), t);
    }

    int size() const { return static_cast<int>(values.size()); }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

using FieldSeq = std::vector<Field>;

/// Time-indexed pair of component profiles produced by a run.
struct Trajectory {
    Grid grid;
    FieldSeq m1;
    FieldSeq m2;

    int steps() const { return static_cast<int>(m1.size()) - 1; }
};

/// Trapezoid quadrature weight of grid point j: interior dx, half weight at
/// the two array ends.
inline double space_weight(const Grid& g, int j) {
    return (j == 0 || j == g.nx - 1) ? 0.5 * g.dx : g.dx;
}

}  // namespace acsim
