#include "dampwave/cli/registry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dampwave::cli {

namespace {

using harness::DecayReport;
using harness::HypothesisError;
using harness::InequalityReport;

constexpr std::array<CheckInfo, 17> kChecks{{
    {"lemma21", "R <= beta F on random states"},
    {"lemma22", "coercivity coefficients bounded by M1"},
    {"lemma23", "rho E <= M2 F and the sandwich (1-beta)E0 <= E <= C_beta E0"},
    {"lemma24", "E0(t) <= C exp(-alpha rho t) E0(0) along exact solutions"},
    {"lemma31", "low-frequency profile error and decomposition residual"},
    {"lemma32", "continuity constants L, M and |u_hat(r) - P| <= L r ||u||_{1,1}"},
    {"formula217", "unit-ball moments with |xi|^k weights"},
    {"formula222", "unit-ball moments with |xi|^-k weights"},
    {"highfreqsup", "high-frequency supremum, closed form vs grid"},
    {"thm11", "total energy decay"},
    {"thm12", "L2 decay (n >= 3)"},
    {"thm13", "distance to the diffusion-wave profile (theta = 2)"},
    {"lemma41", "sin^2 / cos^2 integrals for n >= 3"},
    {"lemma42", "sin^2 integral growth for n = 1, 2"},
    {"thm43", "two-sided L2 bound, n >= 3"},
    {"thm44", "two-sided L2 bound, n = 2"},
    {"thm45", "two-sided L2 bound, n = 1"},
}};

const std::vector<std::string> kInequalityColumns{"inequality", "t", "r", "lhs", "rhs",
                                                  "violation"};

void append_inequality(Table& table, const InequalityReport& report) {
  for (const auto& row : report.rows)
    table.row() << report.name << row.t << row.r << row.lhs << row.rhs << row.violation();
}

CheckOutcome from_inequalities(const std::string& name,
                               std::initializer_list<const InequalityReport*> reports) {
  CheckOutcome out;
  out.name = name;
  out.table.columns = kInequalityColumns;
  out.pass = true;
  double worst = -harness::kInf;
  for (const auto* report : reports) {
    append_inequality(out.table, *report);
    out.pass = out.pass && report->pass;
    if (report->max_violation > worst) {
      worst = report->max_violation;
      out.note = report->name + ": max relative violation " +
                 format_number(report->max_violation) + " over " + report->grid;
    }
  }
  return out;
}

void copy_summary(CheckOutcome& out, const DecayReport& r) {
  out.predicted = r.predicted_slope;
  out.fitted = r.fitted_slope;
  out.stderr_slope = r.slope_stderr;
  out.ratio_spread = r.ratio_spread;
}

void append_note(CheckOutcome& out, const std::string& note) {
  if (note.empty()) return;
  if (!out.note.empty()) out.note += "; ";
  out.note += note;
}

struct Inputs {
  ModelParams params;
  data::InitialDatum d0;
  data::InitialDatum d1;
  std::vector<double> times;
};

Inputs inputs_of(const ExperimentConfig& c) {
  return {c.params(), make_datum(c.datum0, c.model.n), make_datum(c.datum1, c.model.n),
          c.times()};
}

harness::DecayOptions decay_options(const ExperimentConfig& c, double slope_tolerance) {
  harness::DecayOptions o;
  o.slope_tolerance = slope_tolerance;
  o.delta0 = c.delta0;
  o.beta = c.beta;
  return o;
}

CheckOutcome pointwise(const std::string& name, const ExperimentConfig& c) {
  const auto reports =
      harness::check_pointwise_inequalities(c.params(), c.beta, harness::default_pointwise_grid());
  const auto find = [&](std::string_view n) {
    return &*std::find_if(reports.begin(), reports.end(),
                          [&](const InequalityReport& r) { return r.name == n; });
  };
  if (name == "lemma21") return from_inequalities(name, {find("lemma21")});
  if (name == "lemma22") return from_inequalities(name, {find("lemma22_first"), find("lemma22_second")});
  return from_inequalities(name, {find("lemma23"), find("sandwich_lower"), find("sandwich_upper")});
}

CheckOutcome lemma24(const ExperimentConfig& c, const Inputs& in) {
  std::vector<double> t{0.0};
  t.insert(t.end(), in.times.begin(), in.times.end());
  const auto r = harness::logspace(1e-2, 10.0, 50);
  const auto report = harness::check_energy_decay(in.params, c.beta, r, t, in.d0, in.d1);
  return from_inequalities("lemma24", {&report});
}

CheckOutcome lemma32(const Inputs& in) {
  std::vector<data::InitialDatum> data;
  for (const auto* d : {&in.d0, &in.d1})
    if (!d->is_zero()) data.push_back(*d);
  const auto r = harness::logspace(1e-4, 100.0, 241);
  const auto result = harness::check_continuity_modulus(data, r);
  auto out = from_inequalities("lemma32", {&result.bound});
  out.pass = result.pass;
  append_note(out, "L = " + format_number(result.constants.L) + " (grid oracle " +
                       format_number(result.l_oracle) + "), M = " +
                       format_number(result.constants.M));
  return out;
}

CheckOutcome decay_check(harness::DecayTarget which, const ExperimentConfig& c, const Inputs& in,
                     const harness::RunOptions& opts) {
  const double tol = which == harness::DecayTarget::energy ? 0.08 : 0.05;
  const auto run = harness::run_decay_check(which, in.params, in.d0, in.d1, c.ell, in.times,
                                              decay_options(c, tol), opts);
  CheckOutcome out;
  out.name = harness::to_string(which);
  copy_summary(out, run.report);
  out.pass = run.report.pass;
  out.note = run.report.note;
  const bool split = which == harness::DecayTarget::profile;
  out.table.columns = csv_columns(out.name);
  for (std::size_t i = 0; i < run.report.samples.size(); ++i) {
    const auto& s = run.report.samples[i];
    const double rhs = run.rhs.empty() ? harness::kNaN : run.rhs[i];
    auto row = out.table.row();
    row << s.t << s.value << rhs << s.value / rhs;
    if (split) row << (run.low.empty() ? 0.0 : run.low[i]) << (run.high.empty() ? 0.0 : run.high[i]);
    row << (run.errors.empty() ? 0.0 : run.errors[i]);
  }
  append_note(out, "fitted constant C = " + format_number(run.fitted_constant) +
                       ", value/rhs spread " + format_number(run.rhs_spread));
  return out;
}

CheckOutcome lemma31(const ExperimentConfig& c, const Inputs& in, const harness::RunOptions& opts) {
  const auto run = harness::run_decay_check(harness::DecayTarget::profile, in.params, in.d0, in.d1,
                                              c.ell, in.times, decay_options(c, 0.05), opts);
  CheckOutcome out;
  out.name = "lemma31";
  copy_summary(out, run.low_frequency);
  out.note = run.low_frequency.note;
  out.table.columns = csv_columns(out.name);
  for (std::size_t i = 0; i < run.low_frequency.samples.size(); ++i) {
    const auto& s = run.low_frequency.samples[i];
    out.table.row() << s.t << s.value << (run.high.empty() ? 0.0 : run.high[i]);
  }

  std::vector<double> t;
  for (double v : in.times)
    if (v >= 1.0) t.push_back(v);
  const auto r = harness::logspace(1e-4 * c.delta0, c.delta0, 40);
  const auto decomposition =
      harness::check_remainder_decomposition(in.params, in.d0, in.d1, t, r, c.delta0);
  Table residual;
  residual.columns = kInequalityColumns;
  append_inequality(residual, decomposition);
  out.extra.emplace_back("decomposition", std::move(residual));
  out.pass = run.low_frequency.pass && decomposition.pass;
  append_note(out, "decomposition residual max relative violation " +
                       format_number(decomposition.max_violation));
  return out;
}

CheckOutcome moments(bool negative, const ExperimentConfig& c, const Inputs& in,
                     const harness::RunOptions& opts) {
  CheckOutcome out;
  out.name = negative ? "formula222" : "formula217";
  out.table.columns = csv_columns(out.name);
  out.pass = true;
  std::vector<int> orders;
  if (negative) {
    for (int k = c.model.n - 1; k >= 0; --k) orders.push_back(k);
  } else {
    orders = {0, 2};
  }
  bool first = true;
  for (int k : orders) {
    const auto report =
        negative ? harness::check_inverse_ball_moment(c.model.theta, 1.0, k, c.model.n, in.times, opts)
                 : harness::check_ball_moment(c.model.theta, 1.0, k, c.model.n, in.times, opts);
    if (first) copy_summary(out, report);
    first = false;
    out.pass = out.pass && report.pass;
    for (const auto& s : report.samples)
      out.table.row() << static_cast<double>(k) << s.t << s.value
                      << s.value * std::pow(s.t, -report.predicted_slope);
    append_note(out, "k=" + std::to_string(k) + ": slope " + format_number(report.fitted_slope) +
                         " vs " + format_number(report.predicted_slope) +
                         (report.note.empty() ? "" : " (" + report.note + ")"));
  }
  return out;
}

CheckOutcome high_freq(const ExperimentConfig& c, const Inputs& in) {
  const auto check = harness::check_high_freq_sup(c.model.theta, c.ell, 1.0, in.times);
  CheckOutcome out;
  out.name = "highfreqsup";
  copy_summary(out, check.report);
  out.pass = check.report.pass;
  out.note = check.report.note;
  out.table.columns = csv_columns(out.name);
  for (std::size_t i = 0; i < check.values.size(); ++i) {
    const auto& v = check.values[i];
    out.table.row() << in.times[i] << v.closed_form << v.numeric_max << v.chain_bound
                    << v.argmax_r;
  }
  append_note(out, "max closed-form/grid disagreement " + format_number(check.max_disagreement));
  return out;
}

CheckOutcome optimality(const std::string& name, const ExperimentConfig& c, const Inputs& in,
                        const harness::RunOptions& opts) {
  const auto suite = harness::optimality_suite(c.model.n, in.times, opts);
  CheckOutcome out;
  out.name = name;
  copy_summary(out, suite.reports.front());
  out.pass = suite.pass;
  out.table.columns = csv_columns(name);
  for (const auto& row : suite.rows)
    out.table.row() << row.t << row.sin2 << row.cos2 << row.f_n << row.g_n
                    << row.sin2_identity_defect << row.cos2_identity_defect;
  for (const auto& r : suite.reports)
    append_note(out, r.name + (r.pass ? " pass" : " fail") +
                         (r.note.empty() ? "" : " (" + r.note + ")"));
  if (c.model.n >= 3) {
    append_note(out, "A0 = " + format_number(suite.a0) + ", |F_n| <= A0/2 for t >= 1e3: " +
                         (suite.riemann_lebesgue_ok ? "yes" : "no"));
  }
  return out;
}

CheckOutcome two_sided(const std::string& name, const ExperimentConfig& c, const Inputs& in,
                       const harness::RunOptions& opts) {
  const auto run = harness::two_sided_l2(in.params, in.d0, in.d1, c.ell, in.times, 4.0, opts);
  CheckOutcome out;
  out.name = name;
  copy_summary(out, run.report);
  out.pass = run.report.pass;
  out.note = run.report.note;
  out.table.columns = csv_columns(name);
  for (const auto& s : run.report.samples) {
    double g = 0.0;
    if (c.model.n >= 3) g = std::pow(s.t, -(c.model.n - 2) / 8.0);
    else if (c.model.n == 2) g = std::sqrt(std::log(s.t));
    else g = std::sqrt(s.t);
    out.table.row() << s.t << s.value << s.value / g;
  }
  append_note(out, "C1 = " + format_number(run.c1) + ", C2 = " + format_number(run.c2) +
                       ", I0 = " + format_number(run.i0));
  return out;
}

void require_ggh_thm13(const ExperimentConfig& c, const char* what) {
  if (c.model.theta != 2.0) throw HypothesisError(std::string(what) + " requires theta = 2");
  const int n = c.model.n;
  if (n >= 6) {
    if (!(c.ell > n / 4.0 - 0.5))
      throw HypothesisError(std::string(what) + " requires ell > n/4 - 1/2 for n >= 6");
  } else if (!(c.ell >= 1.0)) {
    throw HypothesisError(std::string(what) + " requires ell >= 1 for 1 <= n <= 5");
  }
}

}  // namespace

std::span<const CheckInfo> registered_checks() { return kChecks; }

bool is_registered(std::string_view name) {
  return std::any_of(kChecks.begin(), kChecks.end(),
                     [&](const CheckInfo& c) { return c.name == name; });
}

std::vector<std::string> csv_columns(const std::string& name) {
  if (name == "lemma21" || name == "lemma22" || name == "lemma23" || name == "lemma24" ||
      name == "lemma32")
    return kInequalityColumns;
  if (name == "thm11" || name == "thm12")
    return {"t", "value", "rhs", "value_over_rhs", "quad_error"};
  if (name == "thm13") return {"t", "value", "rhs", "value_over_rhs", "low", "high", "quad_error"};
  if (name == "lemma31") return {"t", "low", "high"};
  if (name == "formula217" || name == "formula222") return {"k", "t", "value", "normalized"};
  if (name == "highfreqsup")
    return {"t", "closed_form", "numeric_max", "chain_bound", "argmax_r"};
  if (name == "lemma41" || name == "lemma42")
    return {"t", "sin2", "cos2", "f_n", "g_n", "sin2_identity_defect", "cos2_identity_defect"};
  if (name == "thm43" || name == "thm44" || name == "thm45") return {"t", "norm", "normalized"};
  throw ConfigError("unknown check '" + name + "'");
}

void check_hypotheses(const std::string& name, const ExperimentConfig& c) {
  const int n = c.model.n;
  if (name == "thm12") {
    if (n < 3) throw HypothesisError("thm12: requires n >= 3 (got n = " +
                                     std::to_string(n) + ")");
    if (!(c.ell >= 1.0)) throw HypothesisError("thm12: requires ell >= 1");
  } else if (name == "thm13" || name == "lemma31") {
    require_ggh_thm13(c, name.c_str());
  } else if (name == "lemma41" || name == "lemma42") {
    if (c.model.theta != 2.0) throw HypothesisError(name + ": the optimality integrals are for theta = 2");
    if (name == "lemma41" && (n < 3 || n > 5))
      throw HypothesisError("lemma41: the sin^2 bound needs 3 <= n <= 5 (got n = " +
                            std::to_string(n) + ")");
    if (name == "lemma42" && n > 2)
      throw HypothesisError("lemma42: covers n = 1 and n = 2 (got n = " +
                            std::to_string(n) + ")");
    if (!(c.t_grid.t_min > 1.0)) throw HypothesisError(name + ": needs t_min > 1");
  } else if (name == "thm43" || name == "thm44" || name == "thm45") {
    require_ggh_thm13(c, name.c_str());
    if (name == "thm43" && n < 3) throw HypothesisError("thm43: requires n >= 3");
    if (name == "thm44" && n != 2) throw HypothesisError("thm44: requires n = 2");
    if (name == "thm45" && n != 1) throw HypothesisError("thm45: requires n = 1");
    if (c.datum1.family == "zero" || c.datum1.amplitude == 0.0)
      throw HypothesisError(name + ": P1 = 0, the lower bound C1|P1| g(t) degenerates");
    if (name == "thm44" && !(c.t_grid.t_min > 1.0))
      throw HypothesisError("thm44: sqrt(log t) needs t_min > 1");
  } else if (name == "highfreqsup") {
    if (!(c.ell > 0.0)) throw HypothesisError("highfreqsup: needs ell > 0");
  } else if (name == "formula222" && n < 1) {
    throw HypothesisError("formula222: needs n >= 1");
  }
  if (!is_registered(name)) throw ConfigError("unknown check '" + name + "'");
}

CheckOutcome run_check(const std::string& name, const ExperimentConfig& c,
                       const harness::RunOptions& opts) {
  check_hypotheses(name, c);
  if (name == "lemma21" || name == "lemma22" || name == "lemma23") return pointwise(name, c);
  const Inputs in = inputs_of(c);
  if (name == "lemma24") return lemma24(c, in);
  if (name == "lemma31") return lemma31(c, in, opts);
  if (name == "lemma32") return lemma32(in);
  if (name == "formula217") return moments(false, c, in, opts);
  if (name == "formula222") return moments(true, c, in, opts);
  if (name == "highfreqsup") return high_freq(c, in);
  if (name == "thm11") return decay_check(harness::DecayTarget::energy, c, in, opts);
  if (name == "thm12") return decay_check(harness::DecayTarget::l2, c, in, opts);
  if (name == "thm13") return decay_check(harness::DecayTarget::profile, c, in, opts);
  if (name == "lemma41" || name == "lemma42") return optimality(name, c, in, opts);
  return two_sided(name, c, in, opts);
}

}  // namespace dampwave::cli
