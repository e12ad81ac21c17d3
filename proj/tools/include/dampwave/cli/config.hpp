#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "dampwave/data.hpp"
#include "dampwave/model.hpp"

namespace dampwave::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  double theta = 2.0;
  int n = 3;
  bool operator==(const ModelConfig&) const = default;
};

struct DatumConfig {
  std::string family = "zero";  // "gaussian" | "zero"
  double a = 0.5;
  double amplitude = 1.0;
  bool operator==(const DatumConfig&) const = default;
};

struct TGridConfig {
  double t_min = 1e2;
  double t_max = 1e6;
  double points_per_decade = 5.0;
  bool operator==(const TGridConfig&) const = default;
};

struct QuadratureConfig {
  double tolerance = 1e-8;
  int points_per_panel = 16;
  bool operator==(const QuadratureConfig&) const = default;
};

struct ExperimentConfig {
  ModelConfig model;
  DatumConfig datum0;
  DatumConfig datum1{"gaussian", 0.5, 1.0};
  double beta = 0.1;
  double ell = 2.0;
  double delta0 = 0.5;
  TGridConfig t_grid;
  std::vector<std::string> checks;
  std::string output_dir = "dampwave-out";
  QuadratureConfig quadrature;
  bool operator==(const ExperimentConfig&) const = default;

  ModelParams params() const { return ModelParams(model.theta, model.n); }
  std::vector<double> times() const;
};

// JSON text to a validated config. Unknown keys, wrong types and values
// outside their domain raise ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON; parse_config(to_json(c)) == c.
std::string to_json(const ExperimentConfig& config);

void validate(const ExperimentConfig& config);

data::InitialDatum make_datum(const DatumConfig& datum, int n);

}  // namespace dampwave::cli
