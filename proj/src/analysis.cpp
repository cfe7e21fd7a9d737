#include "acsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acsim/errors.hpp"

namespace acsim {

namespace {

// v^m for small nonnegative integer m, exact for negative bases
double ipow(double v, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= v;
    return r;
}

int time_index_of(const Grid& g, double t, int max_index, const char* what) {
    const long k = std::lround(t / g.dt);
    if (k < 0 || k > max_index ||
        std::abs(t - static_cast<double>(k) * g.dt) > 1e-9 * std::max(1.0, std::abs(t)))
        throw std::invalid_argument(std::string(what) +
                                    ": time is not on the trajectory grid");
    return static_cast<int>(k);
}

}  // namespace

const std::vector<AnalyticField>& positivity_test_family() {
    static const std::vector<AnalyticField> family = [] {
        std::vector<AnalyticField> f;
        f.push_back({"t * exp(-x^2)",
                     [](double x, double t) { return t * std::exp(-x * x); },
                     [](double x, double) { return std::exp(-x * x); },
                     [](double x, double t) {
                         return t * std::exp(-x * x) * (4.0 * x * x - 2.0);
                     }});
        f.push_back({"sin(t) * exp(-x^2/2)",
                     [](double x, double t) {
                         return std::sin(t) * std::exp(-0.5 * x * x);
                     },
                     [](double x, double t) {
                         return std::cos(t) * std::exp(-0.5 * x * x);
                     },
                     [](double x, double t) {
                         return std::sin(t) * std::exp(-0.5 * x * x) * (x * x - 1.0);
                     }});
        f.push_back({"(1 - exp(-t)) * x * exp(-x^2)",
                     [](double x, double t) {
                         return (1.0 - std::exp(-t)) * x * std::exp(-x * x);
                     },
                     [](double x, double t) {
                         return std::exp(-t) * x * std::exp(-x * x);
                     },
                     [](double x, double t) {
                         return (1.0 - std::exp(-t)) * std::exp(-x * x) *
                                (4.0 * x * x * x - 6.0 * x);
                     }});
        f.push_back({"t^2 * exp(-x^2) * cos(x)",
                     [](double x, double t) {
                         return t * t * std::exp(-x * x) * std::cos(x);
                     },
                     [](double x, double t) {
                         return 2.0 * t * std::exp(-x * x) * std::cos(x);
                     },
                     [](double x, double t) {
                         return t * t * std::exp(-x * x) *
                                ((4.0 * x * x - 3.0) * std::cos(x) +
                                 4.0 * x * std::sin(x));
                     }});
        f.push_back({"tanh(t) * x^2 * exp(-x^2)",
                     [](double x, double t) {
                         return std::tanh(t) * x * x * std::exp(-x * x);
                     },
                     [](double x, double t) {
                         const double th = std::tanh(t);
                         return (1.0 - th * th) * x * x * std::exp(-x * x);
                     },
                     [](double x, double t) {
                         return std::tanh(t) * std::exp(-x * x) *
                                (4.0 * x * x * x * x - 10.0 * x * x + 2.0);
                     }});
        f.push_back({"t/(1+t) * exp(-x^2)",
                     [](double x, double t) {
                         return t / (1.0 + t) * std::exp(-x * x);
                     },
                     [](double x, double t) {
                         return std::exp(-x * x) / ((1.0 + t) * (1.0 + t));
                     },
                     [](double x, double t) {
                         return t / (1.0 + t) * std::exp(-x * x) *
                                (4.0 * x * x - 2.0);
                     }});
        f.push_back({"sin(2t) * exp(-(x-1)^2)",
                     [](double x, double t) {
                         const double u = x - 1.0;
                         return std::sin(2.0 * t) * std::exp(-u * u);
                     },
                     [](double x, double t) {
                         const double u = x - 1.0;
                         return 2.0 * std::cos(2.0 * t) * std::exp(-u * u);
                     },
                     [](double x, double t) {
                         const double u = x - 1.0;
                         return std::sin(2.0 * t) * std::exp(-u * u) *
                                (4.0 * u * u - 2.0);
                     }});
        f.push_back({"(1 - exp(-t)) * exp(-x^2/2)",
                     [](double x, double t) {
                         return (1.0 - std::exp(-t)) * std::exp(-0.5 * x * x);
                     },
                     [](double x, double t) {
                         return std::exp(-t) * std::exp(-0.5 * x * x);
                     },
                     [](double x, double t) {
                         return (1.0 - std::exp(-t)) * std::exp(-0.5 * x * x) *
                                (x * x - 1.0);
                     }});
        f.push_back({"t * x * exp(-x^2/2)",
                     [](double x, double t) {
                         return t * x * std::exp(-0.5 * x * x);
                     },
                     [](double x, double) { return x * std::exp(-0.5 * x * x); },
                     [](double x, double t) {
                         return t * std::exp(-0.5 * x * x) * (x * x * x - 3.0 * x);
                     }});
        f.push_back({"atan(t) * exp(-x^2) * sin(x)",
                     [](double x, double t) {
                         return std::atan(t) * std::exp(-x * x) * std::sin(x);
                     },
                     [](double x, double t) {
                         return std::exp(-x * x) * std::sin(x) / (1.0 + t * t);
                     },
                     [](double x, double t) {
                         return std::atan(t) * std::exp(-x * x) *
                                ((4.0 * x * x - 3.0) * std::sin(x) -
                                 4.0 * x * std::cos(x));
                     }});
        return f;
    }();
    return family;
}

double check_positivity_lemma(const AnalyticField& f, int n, const Grid& g,
                              const std::optional<WeightedMeasure>& mu) {
    if (n < 0)
        throw std::invalid_argument("positivity check: power index n must be nonnegative");
    if (!f.value || !f.time_derivative || !f.space_second_derivative)
        throw std::invalid_argument(
            "positivity check: test field needs value and both derivatives");
    for (int j = 0; j < g.nx; ++j)
        if (std::abs(f.value(g.x(j), 0.0)) > 1e-12)
            throw std::invalid_argument(
                "positivity check: test field must vanish on the t = 0 slice");

    int klast = g.nt;
    if (mu && mu->horizon) {
        const int kh = static_cast<int>(std::floor(*mu->horizon / g.dt + 1e-9));
        klast = std::min(klast, kh);
    }
    const int power = 2 * n + 1;
    double acc = 0.0;
    for (int k = 0; k <= klast; ++k) {
        const double t = g.t(k);
        double wt = g.dt;
        if (k == 0 || k == klast) wt *= 0.5;
        if (mu) wt *= mu->time_weight(t);
        double row = 0.0;
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            double w = space_weight(g, j);
            if (mu) w *= mu->space_weight(x);
            const double v = f.value(x, t);
            row += w * ipow(v, power) *
                   (f.time_derivative(x, t) -
                    0.5 * f.space_second_derivative(x, t));
        }
        acc += wt * row;
    }
    return acc;
}

double check_monotonicity(double beta, double sample_range, int sample_count) {
    if (!(beta >= 1.0))
        throw std::domain_error("monotonicity check: beta must be at least 1");
    if (!(sample_range > 0.0))
        throw std::invalid_argument("monotonicity check: sample range must be positive");
    if (sample_count < 2)
        throw std::invalid_argument("monotonicity check: need at least two samples");

    const double step = 2.0 * sample_range / (sample_count - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sample_count; ++i) {
        const double x = -sample_range + i * step;
        for (int j = 0; j < sample_count; ++j) {
            const double y = -sample_range + j * step;
            if (x == y) continue;
            const double d = x - y;
            const double lhs =
                (x * x * x - x - (y * y * y - y) + beta * d) * d;
            best = std::min(best, lhs / (d * d * d * d));
        }
    }
    return best;
}

std::vector<DecayBucket> decay_profile(const Trajectory& traj,
                                       const CutoffSpec& cutoff,
                                       const std::vector<double>& times,
                                       double bucket_width) {
    const Grid& g = traj.grid;
    if (!(bucket_width > 0.0))
        throw std::invalid_argument("decay profile: bucket width must be positive");
    const double edge = cutoff.support_radius();
    if (g.half_width + 1e-12 < 9.0 * edge)
        throw ConfigError(
            "decay profile: grid half-width must be at least 9 (a + w), i.e. four "
            "support-widths of margin beyond the cutoff support");
    if (times.empty())
        throw std::invalid_argument("decay profile: need at least one time");

    std::vector<int> ks;
    ks.reserve(times.size());
    for (double t : times)
        ks.push_back(time_index_of(g, t, traj.steps(), "decay profile"));

    std::vector<double> sup;  // bucket index -> running sup, -1 = untouched
    for (int j = 0; j < g.nx; ++j) {
        const double dist = std::abs(g.x(j)) - edge;
        if (dist <= 0.0) continue;
        const auto idx = static_cast<size_t>(std::floor(dist / bucket_width));
        if (idx >= sup.size()) sup.resize(idx + 1, -1.0);
        double& s = sup[idx];
        for (int k : ks) {
            const auto ku = static_cast<size_t>(k);
            const auto ju = static_cast<size_t>(j);
            s = std::max(s, std::abs(traj.m1[ku].values[ju]));
            s = std::max(s, std::abs(traj.m2[ku].values[ju]));
        }
    }

    std::vector<DecayBucket> table;
    for (size_t i = 0; i < sup.size(); ++i)
        if (sup[i] >= 0.0)
            table.push_back({(static_cast<double>(i) + 0.5) * bucket_width, sup[i]});
    return table;
}

double fit_decay_slope(const std::vector<DecayBucket>& table, double dmin,
                       double dmax) {
    std::vector<double> u, y;
    for (const auto& row : table) {
        if (row.distance < dmin || row.distance > dmax) continue;
        if (!(row.sup_abs > 0.0)) continue;
        u.push_back(row.distance * row.distance);
        y.push_back(std::log(row.sup_abs));
    }
    if (u.size() < 2)
        throw std::invalid_argument(
            "decay fit: need at least two nonzero buckets in the distance window");
    double um = 0.0, ym = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        um += u[i];
        ym += y[i];
    }
    um /= static_cast<double>(u.size());
    ym /= static_cast<double>(u.size());
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        sxx += (u[i] - um) * (u[i] - um);
        sxy += (u[i] - um) * (y[i] - ym);
    }
    return sxy / sxx;
}

double decay_envelope(double T, double d) {
    if (!(T > 0.0)) throw std::domain_error("decay envelope: T must be positive");
    if (!(d > 0.0)) throw std::domain_error("decay envelope: d must be positive");
    return std::pow(T, 1.5) * std::exp(-d * d / (2.0 * T)) / (d * d);
}

std::vector<LpStudyRow> uniform_lp_study(const Grid& g, const ModelParams& base,
                                         const std::vector<CutoffSpec>& cutoffs,
                                         double p, const WeightedMeasure& mu,
                                         std::array<std::uint64_t, 2> seeds,
                                         const SimulateOptions& opts) {
    if (cutoffs.empty())
        throw std::invalid_argument("norm study: need at least one cutoff");
    std::vector<LpStudyRow> table;
    table.reserve(cutoffs.size());
    for (const auto& cut : cutoffs) {
        ModelParams params = base;
        params.cutoff = cut;
        const Trajectory traj = simulate(g, params, seeds, opts);
        table.push_back({cut.plateau_radius,
                         {norm_lp_mu(g, traj.m1, p, mu),
                          norm_lp_mu(g, traj.m2, p, mu)}});
    }
    return table;
}

std::vector<CauchyRow> cutoff_cauchy_study(const Grid& g, const ModelParams& base,
                                           const std::vector<CutoffSpec>& cutoffs,
                                           double p, double beta,
                                           const WeightedMeasure& mu,
                                           std::array<std::uint64_t, 2> seeds,
                                           const SimulateOptions& opts) {
    if (cutoffs.size() < 2)
        throw std::invalid_argument("cutoff study: need at least two cutoffs");
    if (!(beta >= 1.0))
        throw std::domain_error("cutoff study: beta must be at least 1");

    std::vector<std::vector<double>> sampled;
    sampled.reserve(cutoffs.size());
    for (const auto& cut : cutoffs) sampled.push_back(sample_cutoff(g, cut));
    for (size_t i = 0; i + 1 < sampled.size(); ++i)
        for (int j = 0; j < g.nx; ++j)
            if (sampled[i + 1][static_cast<size_t>(j)] <
                sampled[i][static_cast<size_t>(j)] - 1e-12)
                throw ConfigError(
                    "cutoff study: cutoffs must be pointwise nondecreasing on the grid");

    std::vector<Trajectory> runs;
    runs.reserve(cutoffs.size());
    for (const auto& cut : cutoffs) {
        ModelParams params = base;
        params.cutoff = cut;
        runs.push_back(simulate(g, params, seeds, opts));
    }

    std::vector<CauchyRow> table;
    table.reserve(cutoffs.size() - 1);
    for (size_t i = 0; i + 1 < runs.size(); ++i) {
        CauchyRow row;
        row.plateau_from = cutoffs[i].plateau_radius;
        row.plateau_to = cutoffs[i + 1].plateau_radius;
        const std::array<const FieldSeq*, 2> lo = {&runs[i].m1, &runs[i].m2};
        const std::array<const FieldSeq*, 2> hi = {&runs[i + 1].m1, &runs[i + 1].m2};
        for (int c = 0; c < 2; ++c) {
            FieldSeq diff;
            diff.reserve(lo[static_cast<size_t>(c)]->size());
            for (size_t k = 0; k < lo[static_cast<size_t>(c)]->size(); ++k) {
                const double t = g.t(static_cast<int>(k));
                const double damp = std::exp(-beta * t);
                Field d = Field::zeros(g.nx, t);
                const auto& flo = (*lo[static_cast<size_t>(c)])[k].values;
                const auto& fhi = (*hi[static_cast<size_t>(c)])[k].values;
                for (int j = 0; j < g.nx; ++j) {
                    const auto ju = static_cast<size_t>(j);
                    d.values[ju] = damp * (sampled[i + 1][ju] * fhi[ju] -
                                           sampled[i][ju] * flo[ju]);
                }
                diff.push_back(std::move(d));
            }
            row.distances[static_cast<size_t>(c)] = norm_lp_mu(g, diff, p, mu);
        }
        table.push_back(std::move(row));
    }
    return table;
}

double uniqueness_distance(const Trajectory& a, const Trajectory& b,
                           double beta, int n, const WeightedMeasure& mu,
                           double T) {
    if (!a.grid.same_layout(b.grid) || a.steps() != b.steps())
        throw ConfigError("uniqueness distance: trajectories live on different grids");
    if (!(beta > 0.0))
        throw std::invalid_argument("uniqueness distance: beta must be positive");
    if (n < 0)
        throw std::invalid_argument("uniqueness distance: power index n must be nonnegative");
    if (!(T > 0.0))
        throw std::invalid_argument("uniqueness distance: horizon must be positive");

    const Grid& g = a.grid;
    const double p = 2.0 * n + 4.0;
    int klast = static_cast<int>(std::floor(T / g.dt + 1e-9));
    klast = std::min(klast, a.steps());

    double best = 0.0;
    const std::array<const FieldSeq*, 2> am = {&a.m1, &a.m2};
    const std::array<const FieldSeq*, 2> bm = {&b.m1, &b.m2};
    for (int k = 0; k <= klast; ++k) {
        const auto ku = static_cast<size_t>(k);
        const double damp = std::exp(-beta * g.t(k));
        for (int c = 0; c < 2; ++c) {
            const auto& fa = (*am[static_cast<size_t>(c)])[ku];
            const auto& fb = (*bm[static_cast<size_t>(c)])[ku];
            Field d = Field::zeros(g.nx, g.t(k));
            for (int j = 0; j < g.nx; ++j) {
                const auto ju = static_cast<size_t>(j);
                d.values[ju] = fa.values[ju] - fb.values[ju];
            }
            best = std::max(best, damp * norm_lp_space(g, d, p, mu));
        }
    }
    return best;
}

}  // namespace acsim
