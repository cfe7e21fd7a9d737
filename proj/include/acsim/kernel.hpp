#pragma once

#include <optional>
#include <vector>

#include "acsim/grid.hpp"

namespace acsim {

/// Heat kernel of d/dt - (1/2) d2/dx2 at time t > 0:
/// H_t(x,y) = exp(-(x-y)^2 / (2t)) / sqrt(2 pi t).
double eval_kernel(double t, double x, double y);

/// Number of grid spacings covered by the kernel band |x-y| <= 8 sqrt(t).
int kernel_band_halfwidth(const Grid& g, double t);

/// Discrete action of H_t on a grid field: banded Toeplitz matvec with
/// trapezoid quadrature in y. Values outside the grid are zero, so mass
/// leaks once the band reaches the boundary; callers pick L accordingly.
class HeatOperator {
  public:
    HeatOperator(const Grid& g, double t);

    Field apply(const Field& f) const;
    double time() const { return t_; }

  private:
    Grid grid_;
    double t_;
    int band_;
    std::vector<double> taps_;  // kernel values at lags 0..band_, premultiplied by dx
};

Field apply_heat(const Grid& g, const Field& f, double t);

/// Discrete Duhamel integral sum_{k<n} dt * H_{(n-1-k)dt}[g_k]: rectangle rule
/// in time with the kernel lag shifted so the singular s -> t end acts as the
/// identity (lag 0).
Field spacetime_convolve(const Grid& g, const FieldSeq& fields, int t_index);

/// Same integral evaluated for every time index at once, sharing the lag
/// operator cache; fields[n] of the result corresponds to t_index = n.
FieldSeq spacetime_convolve_all(const Grid& g, const FieldSeq& fields);

/// (int_0^T int_R H_t(x,y)^p dy dt)^(1/p), reduced to a closed form in the
/// inner integral. Empty result means the time integral diverges (p >= 3).
std::optional<double> kernel_lp_norm(double p, double T);

}  // namespace acsim
