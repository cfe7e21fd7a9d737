#pragma once

#include <optional>

#include "acsim/cutoff.hpp"
#include "acsim/grid.hpp"

namespace acsim {

/// Weight data for the measure e^{-alpha^2 t/2 - alpha|x|} dx dt, optionally
/// truncated at a time horizon and multiplied by a spatial cutoff.
struct WeightedMeasure {
    double alpha = 1.0;
    std::optional<double> horizon;
    std::optional<CutoffSpec> cutoff;

    WeightedMeasure() = default;
    explicit WeightedMeasure(double a, std::optional<double> T = std::nullopt,
                             std::optional<CutoffSpec> cut = std::nullopt)
        : alpha(a), horizon(T), cutoff(std::move(cut)) {
        if (!(alpha > 0.0))
            throw std::invalid_argument("measure: alpha must be positive");
        if (horizon && !(*horizon > 0.0))
            throw std::invalid_argument("measure: horizon must be positive");
    }

    double space_weight(double x) const {
        double w = std::exp(-alpha * std::abs(x));
        if (cutoff) w *= (*cutoff)(x);
        return w;
    }
    double time_weight(double t) const { return std::exp(-0.5 * alpha * alpha * t); }
};

/// sup_x e^{-alpha|x|} |f(x)| over the grid.
double norm_c_alpha_space(const Grid& g, const Field& f, double alpha);

/// sup_{x,t} e^{-alpha^2 t/2 - alpha|x|} |m(x,t)| over the stored trajectory
/// component.
double norm_c_alpha_spacetime(const Grid& g, const FieldSeq& m, double alpha);

/// (int |m|^p dmu)^{1/p} by trapezoid quadrature in space and time, truncated
/// at min(measure horizon, trajectory length).
double norm_lp_mu(const Grid& g, const FieldSeq& m, double p, const WeightedMeasure& mu);

/// Spatial factor only: (int |f(x)|^p mu.space_weight(x) dx)^{1/p} by trapezoid
/// quadrature. The measure's time weight and horizon are ignored.
double norm_lp_space(const Grid& g, const Field& f, double p, const WeightedMeasure& mu);

enum class HeatBoundMode { into_lp, into_c_alpha };

/// Result of evaluating an operator-norm bounding integral. An empty value
/// signals divergence; time_truncation is where the infinite time integral was
/// cut (the point where its weight falls to 1e-12 of the peak).
struct HeatOperatorBound {
    std::optional<double> value;
    double time_truncation = 0.0;
};

/// Bounding integral for the space-time heat convolution acting on weighted
/// spaces. into_lp evaluates int_0^inf e^{-alpha^2 t (1-1/p)/(2p)} dt (the
/// Gaussian space integral collapses to unit mass), divergent for p <= 1 and
/// equal to 2p^2/(alpha^2 (p-1)) otherwise. into_c_alpha evaluates
/// int_0^T* int H_t^q e^{q alpha|u| - q alpha^2 t/2} du dt with q = p/(p-1),
/// divergent for p <= 3/2 (the t->0 singularity t^{(1-q)/2} is not
/// integrable once q >= 3).
HeatOperatorBound bound_heat_operator_norm(double p, double alpha, HeatBoundMode mode);

}  // namespace acsim
