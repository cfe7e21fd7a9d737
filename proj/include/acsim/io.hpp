#pragma once

#include <cstdint>
#include <string>

#include "acsim/grid.hpp"

namespace acsim {

/// Binary artifact layout (all little-endian): u64 nx, u64 nt, f64 dx,
/// f64 dt, u64 seed, then row-major f64 rows of nx values each. A field
/// sequence stores its rows in time order; a trajectory stores component 1's
/// nt+1 rows followed by component 2's nt+1 rows. Writers are atomic
/// (temp file + rename), so a crash never leaves a half-written artifact.

/// In-memory image of a trajectory artifact. The grid is rebuilt from the
/// header, which stores dx rather than the half-width, so half_width matches
/// the writer's to within one rounding ulp; the sample values round-trip
/// bit-exactly.
struct TrajectoryFile {
    Grid grid;
    std::uint64_t seed = 0;
    Trajectory trajectory;
};

/// Writes header plus the given rows (each must have g.nx values). The nt
/// header field records g.nt regardless of rows.size(), which is the
/// caller's framing (a stochastic-convolution dump has nt+1 rows, a noise
/// dump nt rows).
void write_field_seq_binary(const std::string& path, const Grid& g,
                            const FieldSeq& rows, std::uint64_t seed);

/// Trajectory artifact: header then both components' rows. The header's one
/// seed slot records the first stream seed; the full parameter set belongs in
/// the text sidecar next to the artifact.
void write_trajectory_binary(const std::string& path, const Trajectory& traj,
                             std::uint64_t seed);

/// Reads a trajectory artifact written by write_trajectory_binary. Throws
/// std::runtime_error on malformed or truncated files.
TrajectoryFile read_trajectory_binary(const std::string& path);

/// CSV with header t,x,m1,m2, one row per retained (time, space) pair.
/// Strides subsample: a row is kept when its time index is divisible by
/// time_stride and its space index by space_stride. Values at full precision.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int time_stride = 1, int space_stride = 1);

/// Atomically writes text content to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace acsim
