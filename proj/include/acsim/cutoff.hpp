#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "acsim/grid.hpp"

namespace acsim {

/// Compactly supported spatial cutoff: identically 1 on [-a, a], raised-cosine
/// ramp down to 0 across a < |x| < a + w, identically 0 beyond.
struct CutoffSpec {
    double plateau_radius = 0.0;
    double ramp_width = 0.0;

    CutoffSpec() = default;
    CutoffSpec(double plateau, double ramp)
        : plateau_radius(plateau), ramp_width(ramp) {
        if (!(plateau_radius >= 0.0))
            throw std::invalid_argument("cutoff: plateau radius must be nonnegative");
        if (!(ramp_width > 0.0))
            throw std::invalid_argument("cutoff: ramp width must be positive");
    }

    double operator()(double x) const {
        const double r = std::abs(x);
        if (r <= plateau_radius) return 1.0;
        if (r >= plateau_radius + ramp_width) return 0.0;
        const double s = (r - plateau_radius) / ramp_width;
        return 0.5 * (1.0 + std::cos(std::numbers::pi * s));
    }

    double support_radius() const { return plateau_radius + ramp_width; }
};

inline std::vector<double> sample_cutoff(const Grid& g, const CutoffSpec& cut) {
    std::vector<double> v(static_cast<size_t>(g.nx));
    for (int j = 0; j < g.nx; ++j) v[static_cast<size_t>(j)] = cut(g.x(j));
    return v;
}

}  // namespace acsim
