#include "acsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "acsim/analysis.hpp"
#include "acsim/dynamics.hpp"
#include "acsim/errors.hpp"
#include "acsim/io.hpp"
#include "acsim/kernel.hpp"
#include "acsim/noise.hpp"
#include "acsim/spaces.hpp"

namespace acsim {

namespace {

std::string fmt(double v, const char* format = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string path_join(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

void add_line(Report& r, const std::string& property, bool pass,
              const std::string& detail) {
    r.lines.push_back({property, detail, pass});
}

void finish(const RunConfig& cfg, const Report& r) {
    write_text_file(path_join(cfg.out_dir, r.subcommand + "-report.txt"),
                    r.render());
}

Field gaussian_bump(const Grid& g, double amp, double center) {
    Field f = Field::zeros(g.nx);
    for (int j = 0; j < g.nx; ++j) {
        const double u = g.x(j) - center;
        f.values[static_cast<size_t>(j)] = amp * std::exp(-u * u);
    }
    return f;
}

/// Free-field sequence of the noiseless mild equation: repeated single-step
/// heat flow of the initial profile, matching the integrator's recursion.
FieldSeq heat_flow_seq(const Grid& g, const Field& initial) {
    HeatOperator full(g, g.dt);
    FieldSeq f;
    Field cur(initial.values, 0.0);
    f.push_back(cur);
    for (int k = 0; k < g.nt; ++k) {
        cur = full.apply(cur);
        cur.time_label = g.t(k + 1);
        f.push_back(cur);
    }
    return f;
}

FieldSeq constant_seq(const Grid& g, double c) {
    FieldSeq f;
    for (int k = 0; k <= g.nt; ++k) f.push_back(Field::constant(g.nx, c, g.t(k)));
    return f;
}

FieldSeq zero_seq(const Grid& g) {
    FieldSeq f;
    for (int k = 0; k <= g.nt; ++k) f.push_back(Field::zeros(g.nx, g.t(k)));
    return f;
}

PicardOptions solver_options(const RunConfig& cfg) {
    PicardOptions o;
    o.tolerance = cfg.tolerance;
    o.max_iterations = cfg.max_iterations;
    return o;
}

const DecayBucket& bucket_near(const std::vector<DecayBucket>& table, double d) {
    size_t best = 0;
    for (size_t i = 1; i < table.size(); ++i)
        if (std::abs(table[i].distance - d) < std::abs(table[best].distance - d))
            best = i;
    return table[best];
}

}  // namespace

bool Report::all_passed() const {
    return std::all_of(lines.begin(), lines.end(),
                       [](const ReportLine& l) { return l.pass; });
}

std::string Report::render() const {
    std::ostringstream out;
    out << "== " << subcommand << " ==\n";
    int passed = 0;
    for (const auto& l : lines) {
        out << (l.pass ? "[PASS] " : "[FAIL] ") << l.property << " - "
            << l.detail << "\n";
        if (l.pass) ++passed;
    }
    out << subcommand << ": " << passed << "/" << lines.size()
        << " checks passed\n";
    return out.str();
}

Report run_simulate(const RunConfig& cfg) {
    cfg.validate();
    Report r{"simulate", {}};

    const Grid g = cfg.make_grid();
    const ModelParams params = cfg.make_params(g);
    const Trajectory traj =
        simulate(g, params, cfg.seeds(), {.with_noise = cfg.with_noise});

    bool finite = true;
    double sup = 0.0;
    for (const FieldSeq* comp : {&traj.m1, &traj.m2})
        for (const Field& f : *comp) {
            finite = finite && f.all_finite();
            sup = std::max(sup, f.sup_norm());
        }
    add_line(r, "simulate/finite-state", finite,
             "all " + std::to_string(2 * (g.nt + 1)) +
                 " field slices finite, overall sup " + fmt(sup));

    const double bound = 0.5 / (3.0 * sup * sup + 1.0 + 2.0 * cfg.lambda);
    add_line(r, "simulate/stability-margin", g.dt <= bound,
             "dt " + fmt(g.dt) + " vs state bound 0.5/(3 M^2 + 1 + 2 lambda) = " +
                 fmt(bound) + " at M = " + fmt(sup));

    const std::string bin = path_join(cfg.out_dir, "trajectory.bin");
    const std::string csv = path_join(cfg.out_dir, "trajectory.csv");
    const std::string sidecar = path_join(cfg.out_dir, "trajectory.cfg");
    write_trajectory_binary(bin, traj, cfg.seed1);
    const int tstride = std::max(1, g.nt / 100);
    const int sstride = std::max(1, g.nx / 250);
    write_trajectory_csv(csv, traj, tstride, sstride);
    write_text_file(sidecar,
                    "# parameters of the run stored in trajectory.bin\n" +
                        cfg.emit());

    const TrajectoryFile back = read_trajectory_binary(bin);
    bool round_trip = back.grid.nx == g.nx && back.grid.nt == g.nt &&
                      back.seed == cfg.seed1 &&
                      std::abs(back.grid.half_width - g.half_width) <=
                          1e-12 * g.half_width;
    for (int k = 0; k <= g.nt && round_trip; ++k)
        round_trip = back.trajectory.m1[static_cast<size_t>(k)].values ==
                         traj.m1[static_cast<size_t>(k)].values &&
                     back.trajectory.m2[static_cast<size_t>(k)].values ==
                         traj.m2[static_cast<size_t>(k)].values;
    add_line(r, "simulate/artifact-round-trip", round_trip,
             "trajectory.bin reread: header fields match, samples bit-exact");

    add_line(r, "simulate/artifacts", true,
             "wrote " + bin + ", " + csv + " (strides " +
                 std::to_string(tstride) + "x" + std::to_string(sstride) +
                 "), " + sidecar);

    finish(cfg, r);
    return r;
}

Report run_verify_kernel(const RunConfig& cfg) {
    cfg.validate();
    Report r{"verify-kernel", {}};

    const Grid g(20.0, 1600, 1e-3, 1);

    // Mass conservation: H_t applied to the unit profile stays 1 wherever the
    // kernel band keeps clear of the boundary.
    double mass_err = 0.0;
    for (double t : {1e-3, 0.01, 0.1, 1.0}) {
        const Field one = Field::constant(g.nx, 1.0);
        const Field v = apply_heat(g, one, t);
        const double margin = 8.0 * std::sqrt(t) + 1.0;
        for (int j = 0; j < g.nx; ++j)
            if (std::abs(g.x(j)) <= g.half_width - margin)
                mass_err = std::max(
                    mass_err, std::abs(v.values[static_cast<size_t>(j)] - 1.0));
    }
    add_line(r, "kernel/unit-mass", mass_err <= 1e-6,
             "max interior deviation of H_t[1] from 1 over t in {1e-3..1}: " +
                 fmt(mass_err) + " (tolerance 1e-6)");

    // Semigroup property on a localized profile.
    const Field f = gaussian_bump(g, 1.0, 0.0);
    const Field nested = apply_heat(g, apply_heat(g, f, 0.3), 0.2);
    const Field direct = apply_heat(g, f, 0.5);
    double semi_err = 0.0;
    for (int j = 0; j < g.nx; ++j)
        if (std::abs(g.x(j)) <= 10.0)
            semi_err = std::max(semi_err,
                                std::abs(nested.values[static_cast<size_t>(j)] -
                                         direct.values[static_cast<size_t>(j)]));
    add_line(r, "kernel/semigroup", semi_err <= 1e-6,
             "sup |H_0.2 H_0.3 f - H_0.5 f| on |x| <= 10: " + fmt(semi_err) +
                 " (tolerance 1e-6)");

    // Squared space-time L^2 norm over one unit of time: closed form 1/sqrt(pi).
    const auto n2 = kernel_lp_norm(2.0, 1.0);
    const double target = 1.0 / std::sqrt(std::numbers::pi);
    const bool l2_ok =
        n2.has_value() && std::abs(*n2 * *n2 - target) <= 1e-3;
    add_line(r, "kernel/l2-mass", l2_ok,
             "kernel_lp_norm(2,1)^2 = " +
                 (n2 ? fmt(*n2 * *n2, "%.8g") : std::string("divergent")) +
                 " vs 1/sqrt(pi) = " + fmt(target, "%.8g") +
                 " (tolerance 1e-3)");

    // Integrability threshold of the time integral at p = 3.
    const bool div_ok = !kernel_lp_norm(3.0, 1.0).has_value() &&
                        kernel_lp_norm(2.9, 1.0).has_value();
    add_line(r, "kernel/lp-integrability-threshold", div_ok,
             "time integral diverges at p = 3, converges at p = 2.9");

    finish(cfg, r);
    return r;
}

Report run_verify_noise(const RunConfig& cfg) {
    cfg.validate();
    Report r{"verify-noise", {}};

    const Grid g(4.0, 200, 4e-3, 250);  // horizon exactly 1, dx <= sqrt(dt/2)

    // Raw increments: mean ~ 0, variance ~ dx*dt across one realization.
    const NoiseRealization w = sample_white_noise(g, cfg.seed1, 1);
    double mean = 0.0, var = 0.0;
    for (double v : w.increments) mean += v;
    mean /= static_cast<double>(w.increments.size());
    for (double v : w.increments) var += (v - mean) * (v - mean);
    var /= static_cast<double>(w.increments.size() - 1);
    const double cell_target = g.dx * g.dt;
    const bool incr_ok = std::abs(var - cell_target) <= 0.05 * cell_target;
    add_line(r, "noise/increment-variance", incr_ok,
             "empirical cell variance " + fmt(var, "%.6e") + " vs dx*dt = " +
                 fmt(cell_target, "%.6e") + " over " +
                 std::to_string(w.increments.size()) +
                 " increments (tolerance 5%)");

    // Stochastic convolution variance at x = 0, t = 1: target sqrt(t/pi).
    const int replicas = 2000;
    std::vector<std::uint64_t> seeds;
    seeds.reserve(replicas);
    for (int i = 0; i < replicas; ++i)
        seeds.push_back(cfg.seed1 + static_cast<std::uint64_t>(i));
    const CovarianceEstimate est =
        estimate_Z_covariance(g, seeds, 1, 1.0, 0.0, 0.0);
    const double target = std::sqrt(1.0 / std::numbers::pi);
    const bool var_ok = std::abs(est.covariance - target) <= 0.05 * target;
    add_line(r, "noise/convolution-variance", var_ok,
             "Var Z_1(0) = " + fmt(est.covariance, "%.6g") + " +/- " +
                 fmt(est.std_error, "%.2g") + " vs sqrt(1/pi) = " +
                 fmt(target, "%.6g") + " over " + std::to_string(replicas) +
                 " replicas (tolerance 5%)");

    finish(cfg, r);
    return r;
}

Report run_verify_picard(const RunConfig& cfg) {
    cfg.validate();
    Report r{"verify-picard", {}};

    // Window formula at two reference sizes.
    const double t0_zero = compute_T0(0.0, 0.0);
    const double t0_ref = compute_T0(1.0, 1.0);
    const bool t0_ok = t0_zero == 0.5 && t0_ref == 1.0 / 30.0;
    add_line(r, "picard/window-formula", t0_ok,
             "T0(K=0, lambda=0) = " + fmt(t0_zero, "%.17g") +
                 ", T0(K=1, lambda=1) = " + fmt(t0_ref, "%.17g") +
                 " (= 1/30)");

    // Zero free field: the fixed point is zero and is found in one sweep.
    {
        const Grid gz(4.0, 160, 1e-3, 20);
        ModelParams params;
        params.lambda = 1.0;
        params.cutoff = CutoffSpec(2.0, 1.0);
        const PicardResult res = picard_solve(gz, zero_seq(gz), zero_seq(gz),
                                              params, solver_options(cfg));
        double sup = 0.0;
        for (const FieldSeq* comp : {&res.trajectory.m1, &res.trajectory.m2})
            for (const Field& fld : *comp) sup = std::max(sup, fld.sup_norm());
        add_line(r, "picard/zero-free-field", res.iterations == 1 && sup == 0.0,
                 "zero forcing fixed in " + std::to_string(res.iterations) +
                     " iteration(s), solution sup " + fmt(sup));
    }

    // Certified window at K = 1, lambda = 1, run to the full horizon T0 = 1/30.
    const Grid g(6.0, 660, 1.0 / 3000.0, 100);
    ModelParams params;
    params.lambda = 1.0;
    params.cutoff = CutoffSpec(3.0, 1.0);  // plateau covers the constant: K = 1
    const FieldSeq F = constant_seq(g, 0.5);
    const PicardResult res = picard_solve(g, F, F, params, solver_options(cfg));

    add_line(r, "picard/certified-window", res.window_certified && res.K == 1.0,
             "K = " + fmt(res.K) + ", T0 = " + fmt(res.T0, "%.17g") +
                 ", horizon " + fmt(g.horizon(), "%.17g") + " certified");

    add_line(r, "picard/ball-invariance", res.max_iterate_sup <= 2.0 * res.K,
             "max iterate sup " + fmt(res.max_iterate_sup) +
                 " within the ball radius 2K = " + fmt(2.0 * res.K));

    double ratio = 0.0;
    for (size_t i = 1; i < res.residual_history.size(); ++i)
        if (res.residual_history[i - 1] > 1e-12)
            ratio = std::max(
                ratio, res.residual_history[i] / res.residual_history[i - 1]);
    const double ratio_bound =
        g.horizon() * (12.0 * res.K * res.K + 1.0 + 2.0 * params.lambda) + 0.05;
    add_line(r, "picard/contraction-ratio", ratio <= ratio_bound,
             "max successive residual ratio " + fmt(ratio) + " vs bound T(12" +
                 "K^2 + 1 + 2 lambda) + 0.05 = " + fmt(ratio_bound));

    const bool conv = !res.residual_history.empty() &&
                      res.residual_history.back() <= cfg.tolerance &&
                      res.iterations <= cfg.max_iterations;
    add_line(r, "picard/converged", conv,
             std::to_string(res.iterations) + " iterations, final residual " +
                 fmt(res.residual_history.empty()
                         ? -1.0
                         : res.residual_history.back(),
                     "%.3g") +
                 " <= tolerance " + fmt(cfg.tolerance, "%.3g"));

    finish(cfg, r);
    return r;
}

Report run_verify_lemmas(const RunConfig& cfg) {
    cfg.validate();
    Report r{"verify-lemmas", {}};

    // Positivity of int f^{2n+1} (d_t - 1/2 d_xx) f for localized f(.,0) = 0,
    // swept over the whole test family, three powers, plain and weighted.
    {
        const Grid g(8.0, 640, 4e-3, 500);
        const WeightedMeasure weighted(1.0, std::nullopt, CutoffSpec(5.0, 1.0));
        double min_val = 1e300;
        int count = 0;
        for (const AnalyticField& f : positivity_test_family())
            for (int n : {0, 1, 2}) {
                min_val = std::min(min_val, check_positivity_lemma(f, n, g));
                min_val =
                    std::min(min_val, check_positivity_lemma(f, n, g, weighted));
                count += 2;
            }
        add_line(r, "positivity/time-space-integral", min_val >= -1e-6,
                 "min over " + std::to_string(count) +
                     " (member, power, measure) integrals: " + fmt(min_val) +
                     " (tolerance -1e-6)");
    }

    // Monotonicity constant of the shifted drift: k(beta) >= 1/4, increasing.
    {
        std::string vals;
        bool ok = true;
        double prev = 0.0;
        for (double beta : {1.0, 2.0, 5.0, 10.0}) {
            const double k = check_monotonicity(beta, 5.0, 81);
            ok = ok && k >= 0.25 - 1e-9 && k >= prev - 1e-12;
            prev = k;
            if (!vals.empty()) vals += ", ";
            vals += "k(" + fmt(beta, "%.0f") + ") = " + fmt(k, "%.6g");
        }
        add_line(r, "monotonicity/quartic-ratio", ok,
                 vals + "; all >= 1/4 and nondecreasing in beta");
    }

    // Heat convolution bounds on the weighted spaces.
    {
        const HeatOperatorBound lp = bound_heat_operator_norm(2.0, 1.0,
                                                              HeatBoundMode::into_lp);
        const bool lp_ok = lp.value.has_value() && *lp.value <= 8.0 &&
                           std::abs(*lp.value - 8.0) <= 1e-3;
        add_line(r, "operator-bound/lp-to-lp", lp_ok,
                 "p = 2, alpha = 1 bound = " +
                     (lp.value ? fmt(*lp.value, "%.8g") : std::string("divergent")) +
                     " vs closed form 2p^2/(alpha^2 (p-1)) = 8 (within 1e-3, "
                     "never above)");

        const bool div_ok =
            !bound_heat_operator_norm(1.0, 1.0, HeatBoundMode::into_lp)
                 .value.has_value() &&
            !bound_heat_operator_norm(1.5, 1.0, HeatBoundMode::into_c_alpha)
                 .value.has_value() &&
            bound_heat_operator_norm(4.0, 1.0, HeatBoundMode::into_c_alpha)
                .value.has_value();
        add_line(r, "operator-bound/divergence-thresholds", div_ok,
                 "divergent at p = 1 (into Lp) and p = 3/2 (into sup norm), "
                 "finite at p = 4");
    }

    // Far-field decay of a noisy run forced inside a compact cutoff support.
    {
        const double T = 0.5;
        const Grid g(13.5, 1080, 1e-3, 500);
        ModelParams params;
        params.lambda = 1.0;
        params.cutoff = CutoffSpec(1.0, 0.5);
        params.initial_data = {Field::zeros(g.nx), Field::zeros(g.nx)};
        const Trajectory traj = simulate(g, params, cfg.seeds());

        std::vector<double> times;
        for (int k = 1; k <= g.nt; ++k) times.push_back(g.t(k));
        const auto table = decay_profile(traj, params.cutoff, times, 0.05);

        std::string csv = "distance,sup_abs\n";
        for (const auto& row : table)
            csv += fmt(row.distance, "%.17g") + "," + fmt(row.sup_abs, "%.17g") +
                   "\n";
        write_text_file(path_join(cfg.out_dir, "decay.csv"), csv);

        const double slope = fit_decay_slope(table, 1.0, 2.0);
        const double slope_bound = -(1.0 - 0.2) / (2.0 * T);
        add_line(r, "decay/far-field-slope", slope <= slope_bound,
                 "ln sup vs distance^2 slope " + fmt(slope) +
                     " vs bound -(1-0.2)/(2T) = " + fmt(slope_bound));

        double env_c = 0.0;
        for (const auto& row : table)
            if (row.distance >= 1.0 && row.distance <= 2.0 && row.sup_abs > 0.0)
                env_c = std::max(env_c,
                                 row.sup_abs / decay_envelope(T, row.distance));
        const DecayBucket& far = bucket_near(table, 3.0);
        const bool env_ok =
            far.sup_abs <= std::max(1.5 * env_c * decay_envelope(T, far.distance),
                                    1e-12);
        add_line(r, "decay/gaussian-envelope", env_ok,
                 "sup at distance " + fmt(far.distance) + " is " +
                     fmt(far.sup_abs, "%.3g") +
                     " vs extrapolated envelope ceiling " +
                     fmt(1.5 * env_c * decay_envelope(T, far.distance), "%.3g"));
    }

    // Weighted-norm boundedness across growing cutoffs, shared noise.
    {
        const Grid g(12.0, 960, 1e-3, 1000);
        ModelParams base;
        base.lambda = 1.0;
        base.initial_data = {Field::zeros(g.nx), Field::zeros(g.nx)};
        const std::vector<CutoffSpec> cutoffs = {
            {1.0, 1.0}, {2.0, 1.0}, {4.0, 1.0}, {8.0, 1.0}};
        const auto table = uniform_lp_study(g, base, cutoffs, 4.0,
                                            WeightedMeasure(1.0), cfg.seeds());

        std::string csv = "plateau,norm_m1,norm_m2\n";
        for (const auto& row : table)
            csv += fmt(row.plateau, "%.17g") + "," + fmt(row.norms[0], "%.17g") +
                   "," + fmt(row.norms[1], "%.17g") + "\n";
        write_text_file(path_join(cfg.out_dir, "lp.csv"), csv);

        bool bounded = true, saturated = true;
        std::string detail;
        for (int c = 0; c < 2; ++c) {
            std::vector<double> v;
            for (const auto& row : table)
                v.push_back(row.norms[static_cast<size_t>(c)]);
            std::vector<double> sorted = v;
            std::sort(sorted.begin(), sorted.end());
            const double median = 0.5 * (sorted[1] + sorted[2]);
            bounded = bounded &&
                      *std::max_element(v.begin(), v.end()) <= 2.0 * median;
            saturated = saturated && v[3] <= 1.5 * v[2];
            detail += std::string(c == 0 ? "m1: " : "; m2: ") + fmt(v[0]) +
                      ", " + fmt(v[1]) + ", " + fmt(v[2]) + ", " + fmt(v[3]);
        }
        add_line(r, "lp-bound/uniform-in-cutoff", bounded,
                 "L4 norms across plateaus {1,2,4,8}: " + detail +
                     "; max within 2x median");
        add_line(r, "lp-bound/saturation", saturated,
                 "plateau 8 norm within 1.5x of plateau 4 in both components");
    }

    finish(cfg, r);
    return r;
}

Report run_cauchy_study(const RunConfig& cfg) {
    cfg.validate();
    Report r{"cauchy-study", {}};

    const Grid g(12.0, 960, 1e-3, 1000);
    const std::vector<CutoffSpec> cutoffs = {
        {2.0, 1.0}, {4.0, 1.0}, {6.0, 1.0}, {8.0, 1.0}};
    std::string csv = "kind,alpha,plateau_from,plateau_to,dist_m1,dist_m2\n";

    // Deterministic localized runs: distances fall fast and end below 1e-3
    // already under the mild weight alpha = 1.
    {
        ModelParams base;
        base.lambda = 1.0;
        base.initial_data = {gaussian_bump(g, 0.5, 0.0),
                             gaussian_bump(g, -0.4, 0.5)};
        const auto rows =
            cutoff_cauchy_study(g, base, cutoffs, 4.0, 1.0, WeightedMeasure(1.0),
                                {0, 0}, {.with_noise = false});
        bool decreasing = true, small = true;
        std::string detail;
        for (size_t i = 0; i < rows.size(); ++i) {
            csv += "deterministic,1," + fmt(rows[i].plateau_from, "%.17g") +
                   "," + fmt(rows[i].plateau_to, "%.17g") + "," +
                   fmt(rows[i].distances[0], "%.17g") + "," +
                   fmt(rows[i].distances[1], "%.17g") + "\n";
            for (int c = 0; c < 2; ++c) {
                const double d = rows[i].distances[static_cast<size_t>(c)];
                if (i + 1 == rows.size()) small = small && d <= 1e-3;
                if (i > 0)
                    decreasing =
                        decreasing &&
                        d < rows[i - 1].distances[static_cast<size_t>(c)];
            }
            detail += (i ? "; " : "") + fmt(rows[i].plateau_from, "%.0f") +
                      "->" + fmt(rows[i].plateau_to, "%.0f") + ": " +
                      fmt(rows[i].distances[0], "%.3g") + "/" +
                      fmt(rows[i].distances[1], "%.3g");
        }
        add_line(r, "cauchy/deterministic-decreasing", decreasing,
                 "weighted distances between consecutive cutoff runs: " + detail);
        add_line(r, "cauchy/deterministic-final", small,
                 "last distance <= 1e-3 in both components");
    }

    // Noisy runs sharing one noise realization across every cutoff. The
    // annulus where consecutive cutoffs differ sits at |x| >= plateau, so
    // under the alpha = 4 weight consecutive distances decay geometrically
    // and the last pair drops below 1e-3.
    {
        ModelParams base;
        base.lambda = 1.0;
        base.initial_data = {Field::zeros(g.nx), Field::zeros(g.nx)};
        const auto rows = cutoff_cauchy_study(g, base, cutoffs, 4.0, 1.0,
                                              WeightedMeasure(4.0), cfg.seeds());
        bool monotone = true, small = true;
        std::string detail;
        for (size_t i = 0; i < rows.size(); ++i) {
            csv += "noisy,4," + fmt(rows[i].plateau_from, "%.17g") + "," +
                   fmt(rows[i].plateau_to, "%.17g") + "," +
                   fmt(rows[i].distances[0], "%.17g") + "," +
                   fmt(rows[i].distances[1], "%.17g") + "\n";
            for (int c = 0; c < 2; ++c) {
                const double d = rows[i].distances[static_cast<size_t>(c)];
                if (i + 1 == rows.size()) small = small && d <= 1e-3;
                if (i > 0)
                    monotone = monotone &&
                               d <= rows[i - 1].distances[static_cast<size_t>(c)];
            }
            detail += (i ? "; " : "") + fmt(rows[i].plateau_from, "%.0f") +
                      "->" + fmt(rows[i].plateau_to, "%.0f") + ": " +
                      fmt(rows[i].distances[0], "%.3g") + "/" +
                      fmt(rows[i].distances[1], "%.3g");
        }
        add_line(r, "cauchy/noisy-shared-noise", monotone,
                 "common-noise distances non-increasing: " + detail);
        add_line(r, "cauchy/noisy-final", small,
                 "last common-noise distance <= 1e-3 in both components");
    }

    write_text_file(path_join(cfg.out_dir, "cauchy.csv"), csv);
    finish(cfg, r);
    return r;
}

Report run_uniqueness(const RunConfig& cfg) {
    cfg.validate();
    Report r{"uniqueness", {}};
    const WeightedMeasure mu(1.0);

    // Two fixed-point initializations land on the same certified solution.
    {
        const Grid g(6.0, 480, 1e-3, 68);
        ModelParams params;
        params.lambda = 1.0;
        params.cutoff = CutoffSpec(3.0, 1.0);
        const FieldSeq F = heat_flow_seq(g, gaussian_bump(g, 0.3, 0.0));

        const PicardResult a = picard_solve(g, F, F, params, solver_options(cfg));
        PicardOptions from_zero = solver_options(cfg);
        from_zero.initial_iterate = std::make_pair(zero_seq(g), zero_seq(g));
        const PicardResult b = picard_solve(g, F, F, params, from_zero);

        const double dist =
            uniqueness_distance(a.trajectory, b.trajectory, 1.0, 0, mu,
                                g.horizon());
        add_line(r, "uniqueness/initialization-independence",
                 a.window_certified && dist <= 1e-7,
                 "weighted distance between free-field-started and "
                 "zero-started fixed points: " +
                     fmt(dist, "%.3g") + " (tolerance 1e-7)");
    }

    // Fixed point vs integrator: distance is O(dt) with a stable constant.
    {
        const double T = 0.0625;
        std::vector<double> dts, dists;
        std::string csv = "dt,distance,distance_over_dt\n";
        bool certified = true;
        for (int pw = 7; pw <= 10; ++pw) {
            const double dt = std::pow(2.0, -pw);
            const int nt = static_cast<int>(std::lround(T / dt));
            const Grid g(6.0, 480, dt, nt);
            ModelParams params;
            params.lambda = 1.0;
            params.cutoff = CutoffSpec(3.0, 1.0);
            const Field bump = gaussian_bump(g, 0.3, 0.0);
            params.initial_data = {bump, bump};

            const FieldSeq F = heat_flow_seq(g, bump);
            const PicardResult pic =
                picard_solve(g, F, F, params, solver_options(cfg));
            certified = certified && pic.window_certified;
            const Trajectory stepped =
                simulate(g, params, {0, 0}, {.with_noise = false});

            dts.push_back(dt);
            dists.push_back(
                uniqueness_distance(pic.trajectory, stepped, 1.0, 0, mu, T));
            csv += fmt(dt, "%.17g") + "," + fmt(dists.back(), "%.17g") + "," +
                   fmt(dists.back() / dt, "%.17g") + "\n";
        }
        write_text_file(path_join(cfg.out_dir, "uniqueness.csv"), csv);

        double rmin = 1e300, rmax = 0.0;
        bool ordered = certified;
        std::string detail;
        for (size_t i = 0; i < dts.size(); ++i) {
            ordered = ordered && dists[i] > 0.0 && dists[i] <= dts[i] &&
                      (i == 0 || dists[i] < dists[i - 1]);
            rmin = std::min(rmin, dists[i] / dts[i]);
            rmax = std::max(rmax, dists[i] / dts[i]);
            detail += (i ? ", " : "") + fmt(dists[i], "%.3g");
        }
        add_line(r, "uniqueness/dt-scaling-order", ordered,
                 "fixed point vs integrator distances over dt = 2^-7..2^-10: " +
                     detail + " (each <= dt, strictly falling)");
        add_line(r, "uniqueness/dt-scaling-constant", rmax <= 4.0 * rmin,
                 "distance/dt band [" + fmt(rmin, "%.4g") + ", " +
                     fmt(rmax, "%.4g") + "] within factor 4");
    }

    finish(cfg, r);
    return r;
}

Report run_subcommand(const std::string& name, const RunConfig& cfg) {
    if (name == "simulate") return run_simulate(cfg);
    if (name == "verify-kernel") return run_verify_kernel(cfg);
    if (name == "verify-noise") return run_verify_noise(cfg);
    if (name == "verify-picard") return run_verify_picard(cfg);
    if (name == "verify-lemmas") return run_verify_lemmas(cfg);
    if (name == "cauchy-study") return run_cauchy_study(cfg);
    if (name == "uniqueness") return run_uniqueness(cfg);
    throw ConfigError("unknown subcommand '" + name + "'");
}

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {
        "simulate",      "verify-kernel", "verify-noise", "verify-picard",
        "verify-lemmas", "cauchy-study",  "uniqueness"};
    return names;
}

}  // namespace acsim
