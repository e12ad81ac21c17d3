#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dampwave/cli/config.hpp"
#include "dampwave/cli/csv.hpp"
#include "dampwave/harness.hpp"

namespace dampwave::cli {

struct CheckInfo {
  std::string_view name;
  std::string_view description;
};

std::span<const CheckInfo> registered_checks();
bool is_registered(std::string_view name);

// One row of summary.csv plus the per-check tables.
struct CheckOutcome {
  std::string name;
  double predicted = harness::kNaN;
  double fitted = harness::kNaN;
  double stderr_slope = harness::kNaN;
  double ratio_spread = harness::kNaN;
  bool pass = false;
  std::string note;
  Table table;                                       // <name>.csv
  std::vector<std::pair<std::string, Table>> extra;  // <name>_<suffix>.csv
};

// Throws harness::HypothesisError naming the failed assumption.
void check_hypotheses(const std::string& name, const ExperimentConfig& config);

CheckOutcome run_check(const std::string& name, const ExperimentConfig& config,
                       const harness::RunOptions& options);

// Header of <name>.csv; fixed per check.
std::vector<std::string> csv_columns(const std::string& name);

}  // namespace dampwave::cli
