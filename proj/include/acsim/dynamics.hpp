#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "acsim/cutoff.hpp"
#include "acsim/errors.hpp"
#include "acsim/grid.hpp"
#include "acsim/kernel.hpp"

namespace acsim {

/// Parameters of the coupled two-field system. beta is only consumed by the
/// weighted-distance studies, not by the time stepping itself.
struct ModelParams {
    double lambda = 0.0;
    double beta = 1.0;
    CutoffSpec cutoff{1.0, 0.5};
    std::pair<Field, Field> initial_data;
};

/// Drift pair subtracted inside the mild form: component i gets
/// V'(m_i) + lambda (m_i - m_j) with V'(m) = m^3 - m. The coupling term is
/// skipped entirely at lambda == 0 so the two components decouple bit-for-bit.
std::pair<double, double> drift(double m1, double m2, double lambda);

/// K = sup_{t <= T, x} |Lambda F_1| + sup_{t <= T, x} |Lambda F_2|, the free-field
/// size that sets both the Picard ball radius 2K and the window T0.
double compute_K(const Grid& g, const FieldSeq& F1, const FieldSeq& F2,
                 const CutoffSpec& cutoff, double T);

/// Largest horizon on which the fixed-point map is a certified contraction:
/// T0 = min( 1/(8(K^2 + 1/8 + lambda/4)), 1/(2(12K^2 + 1 + 2 lambda)) ).
double compute_T0(double K, double lambda);

struct PicardOptions {
    double tolerance = 1e-8;    // sup-norm change that counts as converged
    int max_iterations = 80;
    /// Starting iterate; defaults to (Lambda F1, Lambda F2).
    std::optional<std::pair<FieldSeq, FieldSeq>> initial_iterate;
};

struct PicardResult {
    Trajectory trajectory;
    int iterations = 0;
    std::vector<double> residual_history;  // sup-norm change per iteration
    double K = 0.0;
    double T0 = 0.0;
    /// True when the window horizon is <= T0, i.e. the ball and contraction
    /// guarantees were active (and enforced) during the solve.
    bool window_certified = false;
    double max_iterate_sup = 0.0;
};

/// Fixed-point solve of the finite-volume mild equations
///   m_i = Lambda F_i - int_0^t H_{t-s} Lambda [drift_i(m_1, m_2)](s) ds
/// on the window [0, g.horizon()]. F_i are the free fields sampled on the
/// window's time grid (nt+1 slices). When the horizon exceeds T0 the solve
/// still runs (callers own the consequences) but ball escape is tolerated
/// instead of raised.
PicardResult picard_solve(const Grid& g, const FieldSeq& F1, const FieldSeq& F2,
                          const ModelParams& params,
                          const PicardOptions& opts = {});

/// One exponential-Euler step of the truncated system, shared by the global
/// integrator. Each component advances as
///   m <- H_dt[ m - dt * Lambda * drift ] + forcing
/// where the forcing argument is the per-step increment of the truncated free
/// field, delta_k = (Lambda F)_{k+1} - H_dt[(Lambda F)_k]; with Lambda == 1
/// this is exactly the increment of the stochastic convolution Z.
class MildStepper {
  public:
    MildStepper(const Grid& g, const ModelParams& params);

    /// Throws ConfigError when dt exceeds the stability bound
    /// 0.5/(3M^2 + 1 + 2 lambda) for the current state size M, and
    /// InvariantViolation when the step produces a non-finite value.
    std::pair<Field, Field> step(const Field& m1, const Field& m2,
                                 const Field& forcing1,
                                 const Field& forcing2) const;

    const std::vector<double>& cutoff_values() const { return cut_; }

  private:
    Grid grid_;
    double lambda_;
    HeatOperator full_;
    std::vector<double> cut_;
};

/// Free-function form of one step, for one-off use.
std::pair<Field, Field> step_mild(const Grid& g, const ModelParams& params,
                                  const std::pair<Field, Field>& state,
                                  const std::pair<Field, Field>& forcing);

struct SimulateOptions {
    bool with_noise = true;
};

/// Integrates the truncated system to the grid horizon. Component i is driven
/// by the white-noise stream addressed by seeds[i] (both components use the
/// same stream-component word, so equal seeds mean equal streams). The state
/// is deterministic given (grid, params, seeds).
Trajectory simulate(const Grid& g, const ModelParams& params,
                    std::array<std::uint64_t, 2> seeds,
                    const SimulateOptions& opts = {});

/// Single-field run: the same machinery with lambda = 0 and the given data in
/// both slots, returning the trajectory whose two components are identical.
Trajectory simulate_single(const Grid& g, const ModelParams& params,
                           const Field& initial, std::uint64_t seed,
                           const SimulateOptions& opts = {});

}  // namespace acsim
