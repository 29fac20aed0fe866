#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gip/jobspec.hpp"

namespace gip {

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    bool verify_only = false;                    // compute oracles, write no data files
    std::optional<std::string> units_override;   // "natural" | "si"
};

struct RunReport {
    std::string mode;
    std::string spec_origin;
    std::string status = "ok";
    std::string units;
    std::vector<std::string> input_echo;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;  // name, checksum
    double wall_clock_s = 0.0;

    // Deterministic except for the trailing wall-clock line.
    std::string to_text() const;
};

// Dispatches the job, writes outputs (unless verify-only) plus the report
// file, and returns the report. Throws Validation/Infeasible/NumericError.
RunReport run_job(const JobSpec& spec, const RunOptions& opts);

}  // namespace gip
