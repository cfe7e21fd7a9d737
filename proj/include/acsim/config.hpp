#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "acsim/dynamics.hpp"
#include "acsim/grid.hpp"

namespace acsim {

/// Initial-profile shapes expressible in a run configuration.
enum class InitialShape { zero, constant, gaussian };

/// Flat key=value run configuration: grid, model, measure, solver, seeds,
/// noise switch, optional study horizon, initial data, output directory.
/// `#` starts a comment; keys may appear at most once.
struct RunConfig {
    // grid
    double half_width = 10.0;
    int nx = 1000;
    double dt = 1e-3;
    int nt = 1000;
    // model
    double lambda = 1.0;
    double beta = 1.0;
    double cutoff_plateau = 6.0;
    double cutoff_ramp = 1.0;
    // measure and solver
    double alpha = 1.0;
    double tolerance = 1e-8;
    int max_iterations = 80;
    // seeds and noise switch
    std::uint64_t seed1 = 12345;
    std::uint64_t seed2 = 12346;
    bool with_noise = true;
    // optional study horizon (defaults to the grid horizon nt*dt)
    std::optional<double> horizon;
    // initial data
    InitialShape initial_shape1 = InitialShape::zero;
    double initial_amplitude1 = 0.0;
    double initial_center1 = 0.0;
    double initial_width1 = 1.0;
    InitialShape initial_shape2 = InitialShape::zero;
    double initial_amplitude2 = 0.0;
    double initial_center2 = 0.0;
    double initial_width2 = 1.0;
    // output
    std::string out_dir = "out";

    /// Parses key=value text. `source_name` prefixes error messages; parse
    /// errors (bad syntax, unknown or duplicate keys, malformed values) are
    /// reported as ConfigError with the offending line number. The result is
    /// not automatically validated.
    static RunConfig parse_text(const std::string& text,
                                const std::string& source_name = "<config>");

    /// parse_text over the contents of the file at `path`.
    static RunConfig parse_file(const std::string& path);

    /// Serializes every set field as key=value lines, doubles at full
    /// precision, so parse_text(emit()) reproduces the exact values.
    std::string emit() const;

    /// Checks every documented range constraint (positivity of grid steps,
    /// L > a + w, dt below the stability bound for the initial data size,
    /// horizon within the grid, valid measure and solver settings) and throws
    /// ConfigError naming the violated constraint.
    void validate() const;

    /// Grid built from the validated fields.
    Grid make_grid() const;

    /// Model parameters (cutoff and sampled initial profiles) on `g`.
    ModelParams make_params(const Grid& g) const;

    std::array<std::uint64_t, 2> seeds() const { return {seed1, seed2}; }

    /// Study horizon: the explicit value when set, otherwise the grid horizon.
    double study_horizon() const;
};

}  // namespace acsim
