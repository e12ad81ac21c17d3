#include "dampwave/cli/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "dampwave/profile.hpp"
#include "dampwave/spectral.hpp"

namespace dampwave::cli {

namespace fs = std::filesystem;

RunResult run_experiment(const ExperimentConfig& config, const RunSettings& settings) {
  validate(config);
  for (const auto& name : config.checks) check_hypotheses(name, config);

  harness::RunOptions opts;
  opts.quad_tolerance = config.quadrature.tolerance;
  opts.points_per_panel = config.quadrature.points_per_panel;

  RunResult result;
  result.outcomes.resize(config.checks.size());
  harness::parallel_for(config.checks.size(), settings.parallel, [&](std::size_t i) {
    const auto& name = config.checks[i];
    try {
      result.outcomes[i] = run_check(name, config, opts);
    } catch (const harness::HypothesisError&) {
      throw;
    } catch (const std::exception& e) {
      CheckOutcome failed;
      failed.name = name;
      failed.table.columns = csv_columns(name);
      failed.note = std::string("error: ") + e.what();
      result.outcomes[i] = std::move(failed);
    }
  });
  for (const auto& o : result.outcomes) result.all_pass = result.all_pass && o.pass;
  return result;
}

Table summary_table(const RunResult& result) {
  Table table;
  table.columns = {"check", "predicted", "fitted", "stderr", "ratio_spread", "verdict"};
  for (const auto& o : result.outcomes)
    table.row() << o.name << o.predicted << o.fitted << o.stderr_slope << o.ratio_spread
                << (o.pass ? "pass" : "fail");
  return table;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw OutputError("output_dir '" + dir.string() + "' cannot be created");
  const fs::path probe = dir / ".dampwave-write-probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "ok") || !f.flush())
      throw OutputError("output_dir '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_outputs(const fs::path& dir, const RunResult& result) {
  for (const auto& o : result.outcomes) {
    write_atomic(dir / (o.name + ".csv"), render_csv(o.table));
    for (const auto& [suffix, table] : o.extra)
      write_atomic(dir / (o.name + "_" + suffix + ".csv"), render_csv(table));
  }
  write_atomic(dir / "summary.csv", render_csv(summary_table(result)));
}

Table profile_curve(const ExperimentConfig& config, double t) {
  validate(config);
  if (config.model.theta != 2.0)
    throw harness::HypothesisError("profile: the diffusion-wave profile needs theta = 2");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ConfigError("profile: --t must be a finite value >= 0");
  const ModelParams params = config.params();
  const auto d0 = make_datum(config.datum0, config.model.n);
  const auto d1 = make_datum(config.datum1, config.model.n);
  const auto p = data::masses(d0, d1);

  Table table;
  table.columns = {"r",   "u_hat_re",           "profile",
                   "abs_diff", "remainder_residual", "envelope_sum"};
  const auto row_at = [&](double r, bool low) {
    const auto values = data::values_at(d0, d1, r);
    const auto state =
        evolve_exact(characteristic_roots(params, r), values.u0_hat, values.u1_hat, t);
    const double prof = profile_hat(params, t, r, p);
    auto row = table.row();
    row << r << state.u_hat.real() << prof << std::abs(state.u_hat - prof);
    if (low) {
      const auto terms = data::remainder_terms(params, t, r, d0, d1, config.delta0);
      row << std::abs(state.u_hat - prof - terms.k1 - terms.k2 - terms.k3)
          << terms.envelope_sum(p);
    } else {
      row << harness::kNaN << harness::kNaN;
    }
  };
  for (double r : harness::logspace(1e-4 * config.delta0, config.delta0, 200)) row_at(r, true);
  const auto high = harness::logspace(config.delta0, 10.0, 101);
  for (std::size_t i = 1; i < high.size(); ++i) row_at(high[i], false);
  return table;
}

namespace {

int report_error(std::ostream& err, const char* kind, const std::exception& e) {
  err << "dampwave: " << kind << ": " << e.what() << "\n";
  return kUsageError;
}

void print_summary(std::ostream& out, const RunResult& result) {
  for (const auto& o : result.outcomes) {
    out << (o.pass ? "PASS " : "FAIL ") << o.name;
    if (!std::isnan(o.fitted))
      out << "  fitted " << format_number(o.fitted) << "  predicted "
          << format_number(o.predicted);
    if (!o.note.empty()) out << "  [" << o.note << "]";
    out << "\n";
  }
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decay-rate experiments for the damped wave u_tt - Δu + (-Δ)^θ u_t = 0"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  double quad_tolerance = 0.0;
  unsigned parallel = 1;
  double profile_t = 0.0;

  auto* run = app.add_subcommand("run", "execute the checks listed in a config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--output-dir", output_dir, "override output_dir");
  run->add_option("--quad-tolerance", quad_tolerance, "override quadrature.tolerance");
  run->add_option("--parallel", parallel, "run up to N checks concurrently")
      ->expected(0, 1)
      ->default_str(std::to_string(std::max(1u, std::thread::hardware_concurrency())));

  auto* profile = app.add_subcommand("profile", "write the profile curve at one time");
  profile->add_option("config", config_path, "JSON experiment config")->required();
  profile->add_option("--t", profile_t, "time")->required();
  profile->add_option("--output-dir", output_dir, "override output_dir");

  auto* list = app.add_subcommand("list-checks", "print the registered check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAllPass;
  } catch (const CLI::ParseError& e) {
    err << "dampwave: usage error: " << e.what() << "\n";
    return kUsageError;
  }

  if (*list) {
    for (const auto& c : registered_checks()) out << c.name << "\t" << c.description << "\n";
    return kAllPass;
  }

  ExperimentConfig config;
  try {
    config = load_config(config_path);
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (run->count("--quad-tolerance")) config.quadrature.tolerance = quad_tolerance;
    validate(config);
  } catch (const ConfigError& e) {
    return report_error(err, "config error", e);
  }

  try {
    if (*profile) {
      const Table table = profile_curve(config, profile_t);
      ensure_writable(config.output_dir);
      write_atomic(fs::path(config.output_dir) / "profile.csv", render_csv(table));
      out << "wrote " << (fs::path(config.output_dir) / "profile.csv").string() << "\n";
      return kAllPass;
    }
    for (const auto& name : config.checks) check_hypotheses(name, config);
    ensure_writable(config.output_dir);
    RunSettings settings;
    settings.parallel = std::max(1u, parallel);
    const RunResult result = run_experiment(config, settings);
    write_outputs(config.output_dir, result);
    print_summary(out, result);
    return result.all_pass ? kAllPass : kSomeFail;
  } catch (const ConfigError& e) {
    return report_error(err, "config error", e);
  } catch (const harness::HypothesisError& e) {
    return report_error(err, "hypothesis violated", e);
  } catch (const OutputError& e) {
    return report_error(err, "output error", e);
  } catch (const fs::filesystem_error& e) {
    return report_error(err, "output error", e);
  }
}

}  // namespace dampwave::cli
