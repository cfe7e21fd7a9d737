#include "acsim/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acsim {

namespace {

constexpr double kPi = std::numbers::pi;
// infinite integrals are cut where their weight falls to 1e-12 of the peak
const double kWeightCut = std::log(1e12);

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double norm_c_alpha_space(const Grid& g, const Field& f, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("norm: alpha must be positive");
    if (f.size() != g.nx) throw std::invalid_argument("norm: field length does not match grid");
    double best = 0.0;
    for (int j = 0; j < g.nx; ++j) {
        double w = std::exp(-alpha * std::abs(g.x(j)));
        best = std::max(best, w * std::abs(f.values[static_cast<size_t>(j)]));
    }
    return best;
}

double norm_c_alpha_spacetime(const Grid& g, const FieldSeq& m, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("norm: alpha must be positive");
    double best = 0.0;
    for (size_t k = 0; k < m.size(); ++k) {
        double tw = std::exp(-0.5 * alpha * alpha * g.t(static_cast<int>(k)));
        best = std::max(best, tw * norm_c_alpha_space(g, m[k], alpha));
    }
    return best;
}

double norm_lp_mu(const Grid& g, const FieldSeq& m, double p, const WeightedMeasure& mu) {
    if (!(p >= 1.0)) throw std::domain_error("norm: p must be at least 1");
    if (m.empty()) return 0.0;
    int klast = static_cast<int>(m.size()) - 1;
    if (mu.horizon) {
        int kh = static_cast<int>(std::floor(*mu.horizon / g.dt + 1e-9));
        klast = std::min(klast, kh);
    }
    std::vector<double> sw(static_cast<size_t>(g.nx));
    for (int j = 0; j < g.nx; ++j)
        sw[static_cast<size_t>(j)] = mu.space_weight(g.x(j)) * space_weight(g, j);

    double acc = 0.0;
    for (int k = 0; k <= klast; ++k) {
        const Field& f = m[static_cast<size_t>(k)];
        if (f.size() != g.nx)
            throw std::invalid_argument("norm: field length does not match grid");
        double row = 0.0;
        for (int j = 0; j < g.nx; ++j)
            row += sw[static_cast<size_t>(j)] *
                   std::pow(std::abs(f.values[static_cast<size_t>(j)]), p);
        double wt = g.dt * mu.time_weight(g.t(k));
        if (k == 0 || k == klast) wt *= 0.5;
        acc += wt * row;
    }
    return std::pow(acc, 1.0 / p);
}

double norm_lp_space(const Grid& g, const Field& f, double p, const WeightedMeasure& mu) {
    if (!(p >= 1.0)) throw std::domain_error("norm: p must be at least 1");
    if (f.size() != g.nx) throw std::invalid_argument("norm: field length does not match grid");
    double acc = 0.0;
    for (int j = 0; j < g.nx; ++j)
        acc += mu.space_weight(g.x(j)) * space_weight(g, j) *
               std::pow(std::abs(f.values[static_cast<size_t>(j)]), p);
    return std::pow(acc, 1.0 / p);
}

HeatOperatorBound bound_heat_operator_norm(double p, double alpha, HeatBoundMode mode) {
    if (!(p >= 1.0)) throw std::domain_error("operator bound: p must be at least 1");
    if (!(alpha > 0.0)) throw std::domain_error("operator bound: alpha must be positive");

    if (mode == HeatBoundMode::into_lp) {
        const double t_cut = 2.0 * p * kWeightCut / (alpha * alpha);
        if (p <= 1.0) return {std::nullopt, t_cut};
        // after the Gaussian space integral collapses to unit mass the
        // integrand is e^{-alpha^2 t (1 - 1/p) / (2p)}; Simpson on [0, t_cut]
        const double rate = alpha * alpha * (1.0 - 1.0 / p) / (2.0 * p);
        const int n = 20000;  // even panel count
        const double h = t_cut / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * std::exp(-rate * i * h);
        }
        return {acc * h / 3.0, t_cut};
    }

    // into_c_alpha: q = p/(p-1); the t -> 0 factor t^{(1-q)/2} is integrable
    // only for q < 3, i.e. p > 3/2
    if (p <= 1.5) return {std::nullopt, 0.0};
    const double q = p / (p - 1.0);
    const double t_cut = 2.0 * kWeightCut / (q * alpha * alpha);
    // inner space integral in closed form:
    //   int H_t^q e^{q alpha |u|} du = 2 (2 pi t)^{(1-q)/2} q^{-1/2}
    //                                  e^{q alpha^2 t / 2} Phi(alpha sqrt(q t))
    // and e^{q alpha^2 t/2} cancels against the time weight exactly.
    auto inner = [&](double t) {
        return 2.0 * std::pow(2.0 * kPi * t, 0.5 * (1.0 - q)) / std::sqrt(q) *
               std_normal_cdf(alpha * std::sqrt(q * t));
    };
    // split off [0, eps] and integrate the cdf series term by term
    const double eps = std::min(0.05, 0.1 * t_cut);
    const double c0 = 2.0 * std::pow(2.0 * kPi, 0.5 * (1.0 - q)) / std::sqrt(q);
    const double phi0 = 1.0 / std::sqrt(2.0 * kPi);
    const double b = alpha * std::sqrt(q);
    double head = 0.0;
    {
        // Phi(b sqrt(t)) = 1/2 + phi0 (b sqrt(t) - b^3 t^{3/2}/6 + b^5 t^{5/2}/40)
        const double e0 = 0.5 * (1.0 - q);
        auto term = [&](double coeff, double extra) {
            double ex = e0 + extra;
            return coeff * std::pow(eps, ex + 1.0) / (ex + 1.0);
        };
        head = c0 * (term(0.5, 0.0) + term(phi0 * b, 0.5) -
                     term(phi0 * b * b * b / 6.0, 1.5) +
                     term(phi0 * b * b * b * b * b / 40.0, 2.5));
    }
    // remaining [eps, t_cut] is smooth after t = v^2
    const double v0 = std::sqrt(eps), v1 = std::sqrt(t_cut);
    const int n = 40000;
    const double h = (v1 - v0) / n;
    double tail = 0.0;
    for (int i = 0; i <= n; ++i) {
        double v = v0 + i * h;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        tail += w * inner(v * v) * 2.0 * v;
    }
    tail *= h / 3.0;
    return {head + tail, t_cut};
}

}  // namespace acsim
