#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "acsim/kernel.hpp"
#include "acsim/spaces.hpp"

using namespace acsim;

namespace {

FieldSeq constant_trajectory(const Grid& g, double c, int steps) {
    FieldSeq seq;
    for (int k = 0; k <= steps; ++k) seq.push_back(Field::constant(g.nx, c, g.t(k)));
    return seq;
}

// Smooth random source: three Gaussian bumps with slow sinusoidal modulation.
FieldSeq random_smooth_source(const Grid& g, int steps, std::mt19937& rng) {
    std::uniform_real_distribution<double> Ua(-1.0, 1.0), Uc(-2.0, 2.0),
        Us(0.3, 1.2), Uw(0.5, 3.0), Up(0.0, 2.0 * std::numbers::pi);
    struct Bump {
        double a, c, s, w, p;
    };
    std::vector<Bump> bumps;
    for (int i = 0; i < 3; ++i)
        bumps.push_back({Ua(rng), Uc(rng), Us(rng), Uw(rng), Up(rng)});
    FieldSeq seq;
    for (int k = 0; k <= steps; ++k) {
        Field f = Field::zeros(g.nx, g.t(k));
        for (int j = 0; j < g.nx; ++j) {
            double acc = 0.0;
            for (const auto& b : bumps) {
                double z = (g.x(j) - b.c) / b.s;
                acc += b.a * std::exp(-0.5 * z * z) *
                       (1.0 + 0.5 * std::sin(b.w * g.t(k) + b.p));
            }
            f.values[static_cast<size_t>(j)] = acc;
        }
        seq.push_back(std::move(f));
    }
    return seq;
}

void scale_source(FieldSeq& seq, double factor) {
    for (auto& f : seq)
        for (auto& v : f.values) v *= factor;
}

}  // namespace

TEST_CASE("cutoff profile: plateau, raised-cosine ramp, compact support") {
    CutoffSpec cut(1.0, 0.5);
    CHECK(cut(0.0) == 1.0);
    CHECK(cut(0.999) == 1.0);
    CHECK(cut(-1.0) == 1.0);
    CHECK(cut(1.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cut(1.5) == 0.0);
    CHECK(cut(-3.0) == 0.0);
    for (double x = -2.0; x <= 2.0; x += 0.01) {
        CHECK(cut(x) >= 0.0);
        CHECK(cut(x) <= 1.0);
        // continuity: adjacent samples stay close
        CHECK(std::abs(cut(x) - cut(x + 1e-6)) < 1e-5);
    }
    CHECK_THROWS_AS(CutoffSpec(-1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(CutoffSpec(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("weighted sup norm of f(x) = x peaks at |x| = 1") {
    Grid g(10.0, 2000, 0.1, 10);
    Field f = Field::zeros(g.nx);
    for (int j = 0; j < g.nx; ++j) f.values[static_cast<size_t>(j)] = g.x(j);
    CHECK(norm_c_alpha_space(g, f, 1.0) ==
          doctest::Approx(0.36787944117144233).epsilon(1e-9));
}

TEST_CASE("zero fields have zero norm under every variant") {
    Grid g(5.0, 100, 0.1, 20);
    FieldSeq z = constant_trajectory(g, 0.0, g.nt);
    WeightedMeasure mu(1.0);
    CHECK(norm_c_alpha_space(g, z[0], 1.0) == 0.0);
    CHECK(norm_c_alpha_spacetime(g, z, 1.0) == 0.0);
    CHECK(norm_lp_mu(g, z, 2.0, mu) == 0.0);
    WeightedMeasure mu_cut(1.0, 2.0, CutoffSpec(1.0, 0.5));
    CHECK(norm_lp_mu(g, z, 4.0, mu_cut) == 0.0);
}

TEST_CASE("L1 mass of the unit field under the full-space weight is 4") {
    // int e^{-t/2} dt * int e^{-|x|} dx = 2 * 2; trajectory long enough that
    // the discarded time tail weighs < 1e-8
    Grid g(10.0, 400, 0.05, 800);
    FieldSeq one = constant_trajectory(g, 1.0, g.nt);
    WeightedMeasure mu(1.0);
    CHECK(norm_lp_mu(g, one, 1.0, mu) == doctest::Approx(4.0).epsilon(5e-4));
}

TEST_CASE("L1 mass of the unit field under a finite horizon") {
    // alpha = 2, horizon 1: int_0^1 e^{-2t} dt * int e^{-2|x|} dx
    Grid g(10.0, 400, 0.05, 100);
    FieldSeq one = constant_trajectory(g, 1.0, g.nt);
    WeightedMeasure mu(2.0, 1.0);
    CHECK(norm_lp_mu(g, one, 1.0, mu) ==
          doctest::Approx(0.43233235838169365).epsilon(2e-3));
}

TEST_CASE("norms are monotone in cutoff, horizon, and weight rate") {
    Grid g(6.0, 240, 0.05, 40);
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        FieldSeq m = random_smooth_source(g, g.nt, rng);
        WeightedMeasure full(1.0);
        WeightedMeasure cut(1.0, std::nullopt, CutoffSpec(2.0, 1.0));
        CHECK(norm_lp_mu(g, m, 2.0, cut) <= norm_lp_mu(g, m, 2.0, full) + 1e-12);

        WeightedMeasure shorter(1.0, 1.0), longer(1.0, 2.0);
        CHECK(norm_lp_mu(g, m, 2.0, shorter) <= norm_lp_mu(g, m, 2.0, longer) + 1e-12);

        CHECK(norm_c_alpha_spacetime(g, m, 2.0) <=
              norm_c_alpha_spacetime(g, m, 1.0) + 1e-12);
    }
}

TEST_CASE("p below 1 is rejected") {
    Grid g(5.0, 100, 0.1, 10);
    FieldSeq one = constant_trajectory(g, 1.0, 2);
    WeightedMeasure mu(1.0);
    CHECK_THROWS_AS(norm_lp_mu(g, one, 0.5, mu), std::domain_error);
}

TEST_CASE("spatial p-norm: closed form, consistency with the space-time norm, errors") {
    // unit field, alpha = 1: int e^{-|x|} dx over [-20, 20) = 2(1 - e^{-20})
    Grid g(20.0, 4000, 0.1, 2);
    Field one = Field::constant(g.nx, 1.0);
    WeightedMeasure mu(1.0);
    CHECK(norm_lp_space(g, one, 1.0, mu) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(norm_lp_space(g, one, 2.0, mu) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));

    // a one-slab trajectory reduces norm_lp_mu to (dt/2)^{1/p} * spatial norm
    std::mt19937 rng(77);
    Grid gs(6.0, 240, 0.05, 40);
    for (int trial = 0; trial < 5; ++trial) {
        FieldSeq m = random_smooth_source(gs, 0, rng);
        WeightedMeasure cut(1.3, std::nullopt, CutoffSpec(2.0, 1.0));
        for (double p : {1.0, 2.0, 4.0}) {
            double whole = norm_lp_mu(gs, m, p, cut);
            double spatial = norm_lp_space(gs, m[0], p, cut);
            CHECK(whole == doctest::Approx(std::pow(0.5 * gs.dt, 1.0 / p) * spatial)
                               .epsilon(1e-12));
        }
    }

    CHECK(norm_lp_space(g, Field::zeros(g.nx), 4.0, mu) == 0.0);
    CHECK_THROWS_AS(norm_lp_space(g, one, 0.5, mu), std::domain_error);
    CHECK_THROWS_AS(norm_lp_space(g, Field::zeros(10), 2.0, mu),
                    std::invalid_argument);
}

TEST_CASE("Lp -> Lp bounding integral evaluates to 2p^2/(alpha^2(p-1))") {
    auto b = bound_heat_operator_norm(2.0, 1.0, HeatBoundMode::into_lp);
    REQUIRE(b.value.has_value());
    CHECK(*b.value <= 8.0);
    CHECK(std::abs(*b.value - 8.0) <= 1e-3);
    CHECK(b.time_truncation == doctest::Approx(110.52408446371419).epsilon(1e-9));

    auto b2 = bound_heat_operator_norm(2.0, 2.0, HeatBoundMode::into_lp);
    REQUIRE(b2.value.has_value());
    CHECK(std::abs(*b2.value - 2.0) <= 1e-3);

    CHECK(!bound_heat_operator_norm(1.0, 1.0, HeatBoundMode::into_lp).value.has_value());
    CHECK_THROWS_AS(bound_heat_operator_norm(0.5, 1.0, HeatBoundMode::into_lp),
                    std::domain_error);
}

TEST_CASE("the Gaussian mass collapse behind the Lp bound is exact") {
    // int H_t(0,y) e^{alpha y / p} dy = e^{alpha^2 t / (2 p^2)}; quadrature check
    const double alpha = 1.0, p = 2.0;
    for (double t : {0.5, 2.0, 10.0}) {
        const double center = alpha * t / p;
        const double reach = 10.0 * std::sqrt(t);
        const int n = 40000;
        const double h = 2.0 * reach / n;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double y = center - reach + (i + 0.5) * h;
            acc += eval_kernel(t, 0.0, y) * std::exp(alpha * y / p) * h;
        }
        CAPTURE(t);
        CHECK(acc == doctest::Approx(std::exp(alpha * alpha * t / (2.0 * p * p)))
                         .epsilon(1e-6));
    }
}

TEST_CASE("sup-norm bounding integral: truncated value and quadrature oracle") {
    auto b = bound_heat_operator_norm(2.0, 1.0, HeatBoundMode::into_c_alpha);
    REQUIRE(b.value.has_value());
    CHECK(*b.value == doctest::Approx(5.613039770193962).epsilon(5e-4));
    CHECK(b.time_truncation == doctest::Approx(27.631021115928547).epsilon(1e-9));

    // oracle: brute 2-D quadrature of int H_t^q e^{q alpha |u| - q alpha^2 t/2} du dt
    // on a graded time mesh (t = v^2)
    const double q = 2.0, alpha = 1.0;
    const double vmax = std::sqrt(b.time_truncation);
    const int ntq = 4000;
    const double dv = vmax / ntq;
    double oracle = 0.0;
    for (int k = 0; k < ntq; ++k) {
        double v = (k + 0.5) * dv;
        double t = v * v;
        double reach = alpha * q * t + 10.0 * std::sqrt(t / q) + 1.0;
        const int ny = 4000;
        double hy = reach / ny;
        double row = 0.0;
        for (int i = 0; i < ny; ++i) {
            double u = (i + 0.5) * hy;
            row += std::pow(eval_kernel(t, 0.0, u), q) * std::exp(q * alpha * u) * hy;
        }
        oracle += 2.0 * row * std::exp(-0.5 * q * alpha * alpha * t) * 2.0 * v * dv;
    }
    CHECK(*b.value == doctest::Approx(oracle).epsilon(2e-3));

    CHECK(!bound_heat_operator_norm(1.5, 1.0, HeatBoundMode::into_c_alpha).value.has_value());
    CHECK(!bound_heat_operator_norm(1.2, 1.0, HeatBoundMode::into_c_alpha).value.has_value());
}

TEST_CASE("empirical operator bound on random unit-norm sources") {
    Grid g(6.0, 240, 0.025, 60);
    WeightedMeasure mu(1.0);
    auto b = bound_heat_operator_norm(2.0, 1.0, HeatBoundMode::into_lp);
    REQUIRE(b.value.has_value());
    std::mt19937 rng(777);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        FieldSeq gsrc = random_smooth_source(g, g.nt, rng);
        double n0 = norm_lp_mu(g, gsrc, 2.0, mu);
        REQUIRE(n0 > 0.0);
        scale_source(gsrc, 1.0 / n0);
        FieldSeq hg = spacetime_convolve_all(g, gsrc);
        worst = std::max(worst, norm_lp_mu(g, hg, 2.0, mu));
    }
    CHECK(worst <= *b.value + 1e-3);
}

TEST_CASE("empirical sup-norm bound on random unit-norm sources") {
    Grid g(6.0, 240, 0.025, 60);
    WeightedMeasure mu(1.0);
    auto b = bound_heat_operator_norm(2.0, 1.0, HeatBoundMode::into_c_alpha);
    REQUIRE(b.value.has_value());
    const double limit = std::sqrt(*b.value);  // Hoelder exponent q = 2
    std::mt19937 rng(778);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        FieldSeq gsrc = random_smooth_source(g, g.nt, rng);
        double n0 = norm_lp_mu(g, gsrc, 2.0, mu);
        REQUIRE(n0 > 0.0);
        scale_source(gsrc, 1.0 / n0);
        FieldSeq hg = spacetime_convolve_all(g, gsrc);
        worst = std::max(worst, norm_c_alpha_spacetime(g, hg, 1.0));
    }
    CHECK(worst <= limit * (1.0 + 1e-3));
}
