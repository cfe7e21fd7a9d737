#include "acsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acsim/noise.hpp"

namespace acsim {

std::pair<double, double> drift(double m1, double m2, double lambda) {
    double d1 = m1 * m1 * m1 - m1;
    double d2 = m2 * m2 * m2 - m2;
    if (lambda != 0.0) {
        d1 += lambda * (m1 - m2);
        d2 += lambda * (m2 - m1);
    }
    return {d1, d2};
}

namespace {

void require_window(const Grid& g, const FieldSeq& f, const char* name) {
    if (f.size() != static_cast<size_t>(g.nt) + 1)
        throw std::invalid_argument(std::string(name) +
                                    " must have nt+1 time slices");
    for (const Field& slice : f)
        if (slice.size() != g.nx)
            throw std::invalid_argument(std::string(name) +
                                        " slice size does not match the grid");
}

double truncated_sup(const FieldSeq& f, const std::vector<double>& cut,
                     int klast) {
    double m = 0.0;
    for (int k = 0; k <= klast; ++k)
        for (size_t j = 0; j < cut.size(); ++j)
            m = std::max(m, std::abs(cut[j] * f[k].values[j]));
    return m;
}

}  // namespace

double compute_K(const Grid& g, const FieldSeq& F1, const FieldSeq& F2,
                 const CutoffSpec& cutoff, double T) {
    require_window(g, F1, "F1");
    require_window(g, F2, "F2");
    if (!(T >= 0.0)) throw std::invalid_argument("T must be nonnegative");
    const int klast = std::min(
        g.nt, static_cast<int>(std::floor(T / g.dt + 1e-9)));
    const std::vector<double> cut = sample_cutoff(g, cutoff);
    return truncated_sup(F1, cut, klast) + truncated_sup(F2, cut, klast);
}

double compute_T0(double K, double lambda) {
    if (!(K >= 0.0)) throw std::domain_error("K must be nonnegative");
    if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
    const double ball = 1.0 / (8.0 * (K * K + 0.125 + lambda / 4.0));
    const double contraction = 1.0 / (2.0 * (12.0 * K * K + 1.0 + 2.0 * lambda));
    return std::min(ball, contraction);
}

PicardResult picard_solve(const Grid& g, const FieldSeq& F1, const FieldSeq& F2,
                          const ModelParams& params, const PicardOptions& opts) {
    require_window(g, F1, "F1");
    require_window(g, F2, "F2");
    if (!(opts.tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (opts.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");

    const std::vector<double> cut = sample_cutoff(g, params.cutoff);
    const double T = g.horizon();
    const double K = compute_K(g, F1, F2, params.cutoff, T);
    const double T0 = compute_T0(K, params.lambda);
    const bool certified = T <= T0 * (1.0 + 1e-12);
    const double ball = 2.0 * K * (1.0 + 1e-12);

    // Truncated free fields Lambda F_i, the additive part of the map.
    FieldSeq LF1(F1), LF2(F2);
    for (int k = 0; k <= g.nt; ++k)
        for (int j = 0; j < g.nx; ++j) {
            LF1[k].values[j] *= cut[j];
            LF2[k].values[j] *= cut[j];
        }

    FieldSeq cur1 = LF1, cur2 = LF2;
    if (opts.initial_iterate) {
        cur1 = opts.initial_iterate->first;
        cur2 = opts.initial_iterate->second;
        require_window(g, cur1, "initial iterate 1");
        require_window(g, cur2, "initial iterate 2");
    }

    auto seq_sup = [&](const FieldSeq& a) {
        double m = 0.0;
        for (const Field& f : a) m = std::max(m, f.sup_norm());
        return m;
    };
    auto check_ball = [&](double sup, int iteration) {
        if (certified && sup > ball)
            throw InvariantViolation(
                "picard iterate " + std::to_string(iteration) +
                " left the ball of radius 2K = " + std::to_string(2.0 * K));
    };

    double max_sup = std::max(seq_sup(cur1), seq_sup(cur2));
    check_ball(max_sup, 0);

    std::vector<double> history;
    FieldSeq d1(static_cast<size_t>(g.nt) + 1), d2(d1.size());
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        for (int k = 0; k <= g.nt; ++k) {
            Field a = Field::zeros(g.nx, g.t(k));
            Field b = Field::zeros(g.nx, g.t(k));
            for (int j = 0; j < g.nx; ++j) {
                auto [da, db] =
                    drift(cur1[k].values[j], cur2[k].values[j], params.lambda);
                a.values[j] = cut[j] * da;
                b.values[j] = cut[j] * db;
            }
            d1[k] = std::move(a);
            d2[k] = std::move(b);
        }
        FieldSeq conv1 = spacetime_convolve_all(g, d1);
        FieldSeq conv2 = spacetime_convolve_all(g, d2);

        double residual = 0.0;
        double sup = 0.0;
        for (int k = 0; k <= g.nt; ++k)
            for (int j = 0; j < g.nx; ++j) {
                const double n1 = LF1[k].values[j] - conv1[k].values[j];
                const double n2 = LF2[k].values[j] - conv2[k].values[j];
                residual = std::max(residual,
                                    std::abs(n1 - cur1[k].values[j]));
                residual = std::max(residual,
                                    std::abs(n2 - cur2[k].values[j]));
                sup = std::max(sup, std::max(std::abs(n1), std::abs(n2)));
                cur1[k].values[j] = n1;
                cur2[k].values[j] = n2;
            }
        history.push_back(residual);
        max_sup = std::max(max_sup, sup);
        check_ball(sup, iter);

        if (residual <= opts.tolerance) {
            PicardResult res;
            res.trajectory = Trajectory{g, std::move(cur1), std::move(cur2)};
            res.iterations = iter;
            res.residual_history = std::move(history);
            res.K = K;
            res.T0 = T0;
            res.window_certified = certified;
            res.max_iterate_sup = max_sup;
            return res;
        }
    }
    throw NonConvergence("picard iteration did not reach tolerance " +
                             std::to_string(opts.tolerance) + " in " +
                             std::to_string(opts.max_iterations) +
                             " iterations",
                         history);
}

MildStepper::MildStepper(const Grid& g, const ModelParams& params)
    : grid_(g),
      lambda_(params.lambda),
      full_(g, g.dt),
      cut_(sample_cutoff(g, params.cutoff)) {
    if (!(lambda_ >= 0.0)) throw ConfigError("lambda must be nonnegative");
}

std::pair<Field, Field> MildStepper::step(const Field& m1, const Field& m2,
                                          const Field& forcing1,
                                          const Field& forcing2) const {
    if (m1.size() != grid_.nx || m2.size() != grid_.nx ||
        forcing1.size() != grid_.nx || forcing2.size() != grid_.nx)
        throw std::invalid_argument("step: field size does not match the grid");

    const double M = std::max(m1.sup_norm(), m2.sup_norm());
    const double bound = 0.5 / (3.0 * M * M + 1.0 + 2.0 * lambda_);
    if (grid_.dt > bound * (1.0 + 1e-12))
        throw ConfigError("time step " + std::to_string(grid_.dt) +
                          " exceeds the stability bound " +
                          std::to_string(bound) + " at state size " +
                          std::to_string(M));

    Field a = Field::zeros(grid_.nx);
    Field b = Field::zeros(grid_.nx);
    for (int j = 0; j < grid_.nx; ++j) {
        auto [d1, d2] = drift(m1.values[j], m2.values[j], lambda_);
        a.values[j] = m1.values[j] - grid_.dt * cut_[j] * d1;
        b.values[j] = m2.values[j] - grid_.dt * cut_[j] * d2;
    }
    Field n1 = full_.apply(a);
    Field n2 = full_.apply(b);
    for (int j = 0; j < grid_.nx; ++j) {
        n1.values[j] += forcing1.values[j];
        n2.values[j] += forcing2.values[j];
    }
    n1.time_label = m1.time_label + grid_.dt;
    n2.time_label = m2.time_label + grid_.dt;
    if (!n1.all_finite() || !n2.all_finite())
        throw InvariantViolation("state became non-finite at t = " +
                                 std::to_string(n1.time_label));
    return {std::move(n1), std::move(n2)};
}

std::pair<Field, Field> step_mild(const Grid& g, const ModelParams& params,
                                  const std::pair<Field, Field>& state,
                                  const std::pair<Field, Field>& forcing) {
    MildStepper stepper(g, params);
    return stepper.step(state.first, state.second, forcing.first,
                        forcing.second);
}

Trajectory simulate(const Grid& g, const ModelParams& params,
                    std::array<std::uint64_t, 2> seeds,
                    const SimulateOptions& opts) {
    const Field& init1 = params.initial_data.first;
    const Field& init2 = params.initial_data.second;
    if (init1.size() != g.nx || init2.size() != g.nx)
        throw ConfigError("initial data size does not match the grid");
    if (!init1.all_finite() || !init2.all_finite())
        throw ConfigError("initial data must be finite");

    const std::vector<double> cut = sample_cutoff(g, params.cutoff);
    MildStepper stepper(g, params);
    HeatOperator full(g, g.dt);
    HeatOperator half(g, 0.5 * g.dt);

    std::array<NoiseRealization, 2> noise;
    if (opts.with_noise) {
        noise[0] = sample_white_noise(g, seeds[0], 1);
        noise[1] = sample_white_noise(g, seeds[1], 1);
    }

    // Free fields F_i = heat flow of the initial data plus the stochastic
    // convolution, advanced by the same recursion the noise module uses.
    std::array<Field, 2> F = {Field(init1.values, 0.0), Field(init2.values, 0.0)};
    std::array<Field, 2> lf_prev;
    std::array<Field, 2> m;
    for (int c = 0; c < 2; ++c) {
        lf_prev[c] = F[c];
        for (int j = 0; j < g.nx; ++j) lf_prev[c].values[j] *= cut[j];
        m[c] = lf_prev[c];
    }

    Trajectory out;
    out.grid = g;
    out.m1.reserve(static_cast<size_t>(g.nt) + 1);
    out.m2.reserve(static_cast<size_t>(g.nt) + 1);
    out.m1.push_back(m[0]);
    out.m2.push_back(m[1]);

    Field dens = Field::zeros(g.nx);
    std::array<Field, 2> delta;
    for (int k = 0; k < g.nt; ++k) {
        for (int c = 0; c < 2; ++c) {
            Field adv = full.apply(F[c]);
            if (opts.with_noise) {
                for (int j = 0; j < g.nx; ++j)
                    dens.values[j] = noise[c].at(k, j) / g.dx;
                Field sm = half.apply(dens);
                for (int j = 0; j < g.nx; ++j) adv.values[j] += sm.values[j];
            }
            adv.time_label = g.t(k + 1);
            F[c] = std::move(adv);

            Field lf_new = F[c];
            for (int j = 0; j < g.nx; ++j) lf_new.values[j] *= cut[j];
            Field spread = full.apply(lf_prev[c]);
            Field d = Field::zeros(g.nx, g.t(k + 1));
            for (int j = 0; j < g.nx; ++j)
                d.values[j] = lf_new.values[j] - spread.values[j];
            delta[c] = std::move(d);
            lf_prev[c] = std::move(lf_new);
        }
        auto [n1, n2] = stepper.step(m[0], m[1], delta[0], delta[1]);
        m[0] = std::move(n1);
        m[1] = std::move(n2);
        out.m1.push_back(m[0]);
        out.m2.push_back(m[1]);
    }
    return out;
}

Trajectory simulate_single(const Grid& g, const ModelParams& params,
                           const Field& initial, std::uint64_t seed,
                           const SimulateOptions& opts) {
    ModelParams single = params;
    single.lambda = 0.0;
    single.initial_data = {initial, initial};
    return simulate(g, single, {seed, seed}, opts);
}

}  // namespace acsim
