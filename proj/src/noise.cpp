#include "acsim/noise.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acsim/kernel.hpp"

namespace acsim {

namespace {

// Philox4x32-10 counter-based generator. A keyed bijection on 128-bit
// counters: nearby counters give statistically independent outputs, so every
// grid cell can be addressed directly without sequential state.
struct PhiloxBlock {
    std::array<std::uint32_t, 4> v;
};

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

PhiloxBlock philox(std::array<std::uint32_t, 4> counter,
                   std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        philox_round(counter, key[0], key[1]);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return {counter};
}

inline double uniform_from_bits(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    // 53 explicit bits, offset to the open interval (0, 1).
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

double standard_gaussian(std::uint64_t seed, std::uint32_t component,
                         std::uint64_t cell, std::uint32_t draw) {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(cell >> 32),
        component, draw};
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const PhiloxBlock out = philox(counter, key);
    const double u1 = uniform_from_bits(out.v[0], out.v[1]);
    const double u2 = uniform_from_bits(out.v[2], out.v[3]);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

NoiseRealization sample_white_noise(const Grid& g, std::uint64_t seed,
                                    int component) {
    if (component != 1 && component != 2)
        throw std::invalid_argument("noise component must be 1 or 2");
    NoiseRealization w;
    w.grid = g;
    w.seed = seed;
    w.component = component;
    w.increments.resize(static_cast<size_t>(g.nx) * static_cast<size_t>(g.nt));
    const double scale = std::sqrt(g.dx * g.dt);
    std::uint64_t cell = 0;
    for (size_t i = 0; i < w.increments.size(); ++i, ++cell)
        w.increments[i] =
            scale * standard_gaussian(seed, static_cast<std::uint32_t>(component), cell);
    return w;
}

namespace {

// Shared recursion body so the full-trajectory and single-index variants
// perform identical arithmetic.
template <typename Sink>
void run_convolution(const NoiseRealization& noise, int last_index, Sink&& sink) {
    const Grid& g = noise.grid;
    HeatOperator full(g, g.dt);
    HeatOperator half(g, 0.5 * g.dt);
    Field cur = Field::zeros(g.nx, 0.0);
    sink(0, cur);
    Field incr = Field::zeros(g.nx, 0.0);
    for (int k = 0; k < last_index; ++k) {
        for (int j = 0; j < g.nx; ++j) incr.values[j] = noise.at(k, j) / g.dx;
        Field next = full.apply(cur);
        Field smoothed = half.apply(incr);
        for (int j = 0; j < g.nx; ++j) next.values[j] += smoothed.values[j];
        next.time_label = g.t(k + 1);
        cur = std::move(next);
        sink(k + 1, cur);
    }
}

}  // namespace

FieldSeq stochastic_convolution(const NoiseRealization& noise) {
    FieldSeq out;
    out.reserve(static_cast<size_t>(noise.grid.nt) + 1);
    run_convolution(noise, noise.grid.nt,
                    [&](int, const Field& f) { out.push_back(f); });
    return out;
}

Field stochastic_convolution_at(const NoiseRealization& noise, int t_index) {
    if (t_index < 0 || t_index > noise.grid.nt)
        throw std::out_of_range("time index outside the grid");
    Field out = Field::zeros(noise.grid.nx, 0.0);
    run_convolution(noise, t_index, [&](int k, const Field& f) {
        if (k == t_index) out = f;
    });
    return out;
}

CovarianceEstimate estimate_Z_covariance(const Grid& g,
                                         const std::vector<std::uint64_t>& seeds,
                                         int component, double t, double x1,
                                         double x2) {
    if (seeds.size() < 2)
        throw std::domain_error("covariance estimation needs at least two seeds");
    const double steps = t / g.dt;
    const int k = static_cast<int>(std::lround(steps));
    if (k < 0 || k > g.nt || std::fabs(steps - k) > 1e-6)
        throw std::invalid_argument("t must be a grid time within the horizon");
    const int j1 = g.index_of(x1);
    const int j2 = g.index_of(x2);

    // E[Z(x1) Z(x2)] directly; the mean of Z is exactly zero.
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t seed : seeds) {
        NoiseRealization w = sample_white_noise(g, seed, component);
        Field z = stochastic_convolution_at(w, k);
        const double prod = z.values[j1] * z.values[j2];
        sum += prod;
        sumsq += prod * prod;
    }
    const double n = static_cast<double>(seeds.size());
    const double mean = sum / n;
    const double var = (sumsq / n - mean * mean) * n / (n - 1.0);
    CovarianceEstimate est;
    est.covariance = mean;
    est.std_error = std::sqrt(var / n);
    est.samples = static_cast<int>(seeds.size());
    return est;
}

}  // namespace acsim
