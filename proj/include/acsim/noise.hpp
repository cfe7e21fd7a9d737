#pragma once

#include <cstdint>
#include <vector>

#include "acsim/grid.hpp"

namespace acsim {

/// One standard normal draw from the counter-based generator. The stream is
/// addressed by (seed, component, cell); the same address always reproduces
/// the same draw, on any platform. draw distinguishes multiple variates per
/// address (unused by the white-noise sampler, which takes one per cell).
double standard_gaussian(std::uint64_t seed, std::uint32_t component,
                         std::uint64_t cell, std::uint32_t draw = 0);

/// Space-time white noise increments on the grid cells: independent normals
/// with mean 0 and variance dx*dt, cell (k, j) = time slab k, space cell j.
struct NoiseRealization {
    Grid grid;
    std::uint64_t seed = 0;
    int component = 1;
    std::vector<double> increments;  // nt * nx, row-major in time

    double at(int k, int j) const {
        return increments[static_cast<size_t>(k) * static_cast<size_t>(grid.nx) +
                          static_cast<size_t>(j)];
    }
};

NoiseRealization sample_white_noise(const Grid& g, std::uint64_t seed, int component);

/// Stochastic convolution Z_t = int_0^t H_{t-s} dW_s on the grid, computed by
/// the splitting recursion Z_{k+1} = H_dt Z_k + H_{dt/2}[w_k / dx], Z_0 = 0.
/// Returns nt+1 fields, one per time node.
FieldSeq stochastic_convolution(const NoiseRealization& noise);

/// Same recursion, keeping only the field at one time index.
Field stochastic_convolution_at(const NoiseRealization& noise, int t_index);

struct CovarianceEstimate {
    double covariance = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Monte Carlo covariance of (Z_t(x1), Z_t(x2)) across independent seeds,
/// with the empirical standard error of the estimate. Needs at least two
/// seeds; t must lie on the time grid.
CovarianceEstimate estimate_Z_covariance(const Grid& g,
                                         const std::vector<std::uint64_t>& seeds,
                                         int component, double t, double x1,
                                         double x2);

}  // namespace acsim
