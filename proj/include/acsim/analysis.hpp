#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acsim/cutoff.hpp"
#include "acsim/dynamics.hpp"
#include "acsim/grid.hpp"
#include "acsim/spaces.hpp"

namespace acsim {

/// Space-time test function with closed-form first time derivative and second
/// space derivative. The positivity study requires the t = 0 slice to vanish.
struct AnalyticField {
    std::string name;
    std::function<double(double x, double t)> value;
    std::function<double(double x, double t)> time_derivative;
    std::function<double(double x, double t)> space_second_derivative;
};

/// Ten smooth, spatially localized test functions, all vanishing at t = 0,
/// exercising even/odd spatial symmetry, oscillation, offset centers, and a
/// variety of time profiles.
const std::vector<AnalyticField>& positivity_test_family();

/// Discrete integral of f^{2n+1} (d_t f - 1/2 d_xx f) over the grid's
/// space-time box by trapezoid quadrature, against Lebesgue measure or, when
/// given, against mu (spatial weight, cutoff, time weight, and horizon all
/// honored). Integration by parts turns the exact integral into a t = T
/// boundary term plus squares, so for a localized f it is nonnegative up to
/// quadrature error; callers assert >= -tolerance.
/// Throws std::invalid_argument when n < 0, a callback is missing, or the
/// t = 0 slice of f does not vanish on the grid.
double check_positivity_lemma(const AnalyticField& f, int n, const Grid& g,
                              const std::optional<WeightedMeasure>& mu = std::nullopt);

/// Smallest sampled value of
///   (V'(x) + beta x - V'(y) - beta y)(x - y) / (x - y)^4
/// over a uniform sample_count x sample_count grid on [-sample_range,
/// sample_range]^2, pairs with x == y skipped. Algebraically the ratio equals
/// 1/4 + (3(x+y)^2/4 + beta - 1)/(x-y)^2, so the result is exactly 1/4 at
/// beta = 1 (attained on x = -y) and nondecreasing in beta.
/// Throws std::domain_error for beta < 1.
double check_monotonicity(double beta, double sample_range, int sample_count);

/// One row of the far-field decay table: bucket midpoint distance from the
/// cutoff support and the sup of |m_i| over both components and the requested
/// times.
struct DecayBucket {
    double distance = 0.0;
    double sup_abs = 0.0;
};

/// Buckets sup|m| by distance from supp(Lambda) = [-(a+w), a+w]. Requires the
/// grid to keep at least four support-widths of margin beyond the support,
/// i.e. half_width >= 9 (a+w) (ConfigError otherwise). times must be nonempty
/// trajectory times. Only buckets containing at least one grid point are
/// returned, in increasing distance order.
std::vector<DecayBucket> decay_profile(const Trajectory& traj,
                                       const CutoffSpec& cutoff,
                                       const std::vector<double>& times,
                                       double bucket_width = 0.25);

/// Least-squares slope of ln(sup_abs) against distance^2 over the buckets
/// with dmin <= distance <= dmax and sup_abs > 0. For a heat-dominated tail
/// observed up to time T the slope is about -1/(2T) or steeper.
double fit_decay_slope(const std::vector<DecayBucket>& table, double dmin,
                       double dmax);

/// Reference far-field envelope T^{3/2} e^{-d^2/(2T)} / d^2 at distance d
/// from the forcing support, observed up to time T.
double decay_envelope(double T, double d);

/// One row of the norm-boundedness study: cutoff plateau radius and the
/// weighted L^p space-time norm of each component.
struct LpStudyRow {
    double plateau = 0.0;
    std::array<double, 2> norms{};
};

/// Runs the integrator once per cutoff -- same seeds, initial data, and noise
/// switch throughout -- and reports norm_lp_mu of each component. Callers
/// assert boundedness across the rows (the values need not be monotone).
std::vector<LpStudyRow> uniform_lp_study(const Grid& g, const ModelParams& base,
                                         const std::vector<CutoffSpec>& cutoffs,
                                         double p, const WeightedMeasure& mu,
                                         std::array<std::uint64_t, 2> seeds,
                                         const SimulateOptions& opts = {});

/// One row of the cutoff-removal study: consecutive plateau radii and the
/// weighted distance between their runs, per component.
struct CauchyRow {
    double plateau_from = 0.0;
    double plateau_to = 0.0;
    std::array<double, 2> distances{};
};

/// For each consecutive pair of nested cutoffs, the distance
///   || e^{-beta t} (Lambda_{n+1} m_{n+1} - Lambda_n m_n) ||_{L^p(mu)}
/// per component, with one shared noise realization across every run so the
/// comparison isolates the cutoff change. Cutoffs must be pointwise
/// nondecreasing on the grid (ConfigError), at least two must be given
/// (std::invalid_argument), and beta must be >= 1 (std::domain_error) so the
/// drift-plus-beta*x map is monotone with constant 1/4.
std::vector<CauchyRow> cutoff_cauchy_study(const Grid& g, const ModelParams& base,
                                           const std::vector<CutoffSpec>& cutoffs,
                                           double p, double beta,
                                           const WeightedMeasure& mu,
                                           std::array<std::uint64_t, 2> seeds,
                                           const SimulateOptions& opts = {});

/// max over grid times t <= T of e^{-beta t} times the spatial weighted
/// L^{2n+4} norm of (a_i - b_i), maximized over the two components. The
/// trajectories must share one grid layout and step count (ConfigError); for
/// the distance to measure uniqueness they must also come from one noise
/// realization, which is the caller's responsibility.
double uniqueness_distance(const Trajectory& a, const Trajectory& b,
                           double beta, int n, const WeightedMeasure& mu,
                           double T);

}  // namespace acsim
