#include "acsim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acsim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBandSigmas = 8.0;  // band cutoff |x-y| <= 8 sqrt(t)
}  // namespace

double eval_kernel(double t, double x, double y) {
    if (!(t > 0.0)) throw std::domain_error("eval_kernel: t must be positive");
    const double u = x - y;
    return std::exp(-0.5 * u * u / t) / std::sqrt(2.0 * kPi * t);
}

int kernel_band_halfwidth(const Grid& g, double t) {
    double reach = kBandSigmas * std::sqrt(t) / g.dx;
    int band = static_cast<int>(std::ceil(reach));
    return std::min(band, g.nx - 1);
}

HeatOperator::HeatOperator(const Grid& g, double t) : grid_(g), t_(t) {
    if (!(t > 0.0)) throw std::domain_error("heat operator: t must be positive");
    band_ = kernel_band_halfwidth(g, t);
    taps_.resize(static_cast<size_t>(band_) + 1);
    for (int l = 0; l <= band_; ++l)
        taps_[static_cast<size_t>(l)] = eval_kernel(t, 0.0, l * g.dx) * g.dx;
}

Field HeatOperator::apply(const Field& f) const {
    if (f.size() != grid_.nx)
        throw std::invalid_argument("heat operator: field length does not match grid");
    const int nx = grid_.nx;
    const double* fv = f.values.data();
    Field out = Field::zeros(nx, f.time_label + t_);
    double* ov = out.values.data();
    for (int i = 0; i < nx; ++i) {
        const int jlo = std::max(0, i - band_);
        const int jhi = std::min(nx - 1, i + band_);
        double acc = 0.0;
        for (int j = jlo; j < i; ++j) acc += taps_[static_cast<size_t>(i - j)] * fv[j];
        for (int j = i; j <= jhi; ++j) acc += taps_[static_cast<size_t>(j - i)] * fv[j];
        // trapezoid halves the end weights of the quadrature interval
        if (jlo == 0) acc -= 0.5 * taps_[static_cast<size_t>(i)] * fv[0];
        if (jhi == nx - 1) acc -= 0.5 * taps_[static_cast<size_t>(nx - 1 - i)] * fv[nx - 1];
        ov[i] = acc;
    }
    return out;
}

Field apply_heat(const Grid& g, const Field& f, double t) {
    return HeatOperator(g, t).apply(f);
}

namespace {

Field convolve_with_ops(const Grid& g, const FieldSeq& fields, int t_index,
                        const std::vector<HeatOperator>& ops) {
    Field out = Field::zeros(g.nx, g.t(t_index));
    for (int k = 0; k < t_index; ++k) {
        const int lag = t_index - 1 - k;
        if (lag == 0) {
            for (int j = 0; j < g.nx; ++j)
                out.values[static_cast<size_t>(j)] +=
                    g.dt * fields[static_cast<size_t>(k)].values[static_cast<size_t>(j)];
        } else {
            Field piece = ops[static_cast<size_t>(lag - 1)].apply(fields[static_cast<size_t>(k)]);
            for (int j = 0; j < g.nx; ++j)
                out.values[static_cast<size_t>(j)] += g.dt * piece.values[static_cast<size_t>(j)];
        }
    }
    return out;
}

std::vector<HeatOperator> build_lag_ops(const Grid& g, int max_lag) {
    std::vector<HeatOperator> ops;
    ops.reserve(static_cast<size_t>(std::max(0, max_lag)));
    for (int l = 1; l <= max_lag; ++l) ops.emplace_back(g, l * g.dt);
    return ops;
}

}  // namespace

Field spacetime_convolve(const Grid& g, const FieldSeq& fields, int t_index) {
    if (t_index < 0 || t_index >= static_cast<int>(fields.size()))
        throw std::out_of_range("spacetime_convolve: time index outside the stored range");
    std::vector<HeatOperator> ops = build_lag_ops(g, t_index - 1);
    return convolve_with_ops(g, fields, t_index, ops);
}

FieldSeq spacetime_convolve_all(const Grid& g, const FieldSeq& fields) {
    const int n = static_cast<int>(fields.size());
    std::vector<HeatOperator> ops = build_lag_ops(g, n - 2);
    FieldSeq out;
    out.reserve(static_cast<size_t>(n));
    for (int idx = 0; idx < n; ++idx) out.push_back(convolve_with_ops(g, fields, idx, ops));
    return out;
}

std::optional<double> kernel_lp_norm(double p, double T) {
    if (!(p >= 1.0)) throw std::domain_error("kernel_lp_norm: p must be at least 1");
    if (!(T > 0.0)) throw std::domain_error("kernel_lp_norm: horizon must be positive");
    if (p >= 3.0) return std::nullopt;  // time integral of t^{(1-p)/2} diverges
    // int H_t^p dy = (2 pi t)^{(1-p)/2} p^{-1/2}; integrate t over [0, T]
    const double inner_coeff = std::pow(2.0 * kPi, 0.5 * (1.0 - p)) / std::sqrt(p);
    const double time_integral = std::pow(T, 0.5 * (3.0 - p)) * 2.0 / (3.0 - p);
    return std::pow(inner_coeff * time_integral, 1.0 / p);
}

}  // namespace acsim
