#pragma once

#include <string>
#include <vector>

#include "acsim/config.hpp"

namespace acsim {

/// One verification result: the property identifier it checks (stable
/// slash-separated name, e.g. "picard/contraction-ratio"), a human-readable
/// measurement against the tolerance, and the verdict.
struct ReportLine {
    std::string property;
    std::string detail;
    bool pass = true;
};

struct Report {
    std::string subcommand;
    std::vector<ReportLine> lines;

    bool all_passed() const;
    /// "[PASS] property - detail" rows plus a summary line.
    std::string render() const;
};

/// Subcommand drivers. Each validates the configuration, runs its checks or
/// simulation, writes its artifacts (report plus any CSV/binary outputs)
/// under cfg.out_dir, and returns the report. Verification subcommands run
/// pinned internal scenarios -- the config contributes seeds, solver
/// tolerance, and the output directory -- while `simulate` is driven entirely
/// by the config.
Report run_simulate(const RunConfig& cfg);
Report run_verify_kernel(const RunConfig& cfg);
Report run_verify_noise(const RunConfig& cfg);
Report run_verify_picard(const RunConfig& cfg);
Report run_verify_lemmas(const RunConfig& cfg);
Report run_cauchy_study(const RunConfig& cfg);
Report run_uniqueness(const RunConfig& cfg);

/// Dispatches by subcommand name; ConfigError for unknown names.
Report run_subcommand(const std::string& name, const RunConfig& cfg);

/// Names accepted by run_subcommand, in documentation order.
const std::vector<std::string>& subcommand_names();

}  // namespace acsim
