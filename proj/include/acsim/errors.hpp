#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acsim {

/// Parameters that cannot be run as given (grid geometry, stability bound,
/// malformed run configuration).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A guaranteed quantity was observed to fail mid-computation (iterate left
/// its ball, state stopped being finite).
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-point iteration exhausted its iteration budget. Carries the sup-norm
/// change of every completed iteration for diagnosis.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& message, std::vector<double> history)
        : std::runtime_error(message), residual_history(std::move(history)) {}

    std::vector<double> residual_history;
};

}  // namespace acsim
