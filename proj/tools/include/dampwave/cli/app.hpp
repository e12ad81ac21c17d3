#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dampwave/cli/config.hpp"
#include "dampwave/cli/csv.hpp"
#include "dampwave/cli/registry.hpp"

namespace dampwave::cli {

enum ExitCode : int { kAllPass = 0, kSomeFail = 1, kUsageError = 2 };

struct RunSettings {
  unsigned parallel = 1;  // checks evaluated concurrently
};

struct RunResult {
  std::vector<CheckOutcome> outcomes;  // in config order
  bool all_pass = true;
};

// Validates every hypothesis before any check runs.
RunResult run_experiment(const ExperimentConfig& config, const RunSettings& settings = {});

Table summary_table(const RunResult& result);

// Creates the directory if needed and verifies it accepts files.
void ensure_writable(const std::filesystem::path& dir);

// Writes <check>.csv, the attachments and summary.csv.
void write_outputs(const std::filesystem::path& dir, const RunResult& result);

// r, u_hat_re, profile, abs_diff, remainder_residual, envelope_sum on (0, δ₀]
// followed by the band (δ₀, 10] where the decomposition columns are nan.
Table profile_curve(const ExperimentConfig& config, double t);

// Full command line: returns the process exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dampwave::cli
