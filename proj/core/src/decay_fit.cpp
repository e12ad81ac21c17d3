#include <algorithm>
#include <cmath>
#include <sstream>

#include "dampwave/harness.hpp"

namespace dampwave::harness {

namespace {

constexpr std::size_t kMinSamples = 8;

std::string describe_t(double t) {
  std::ostringstream out;
  out.precision(17);
  out << t;
  return out.str();
}

struct Normalized {
  double spread = kNaN;
  double growth = kNaN;
};

Normalized normalize(std::span<const Sample> samples, const Gauge& gauge) {
  Normalized out;
  double lo = kInf;
  double hi = 0.0;
  double running_min = kInf;
  double growth = 1.0;
  for (const auto& s : samples) {
    const double ratio = s.value / gauge(s.t);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    running_min = std::min(running_min, ratio);
    growth = std::max(growth, ratio / running_min);
  }
  out.spread = hi / lo;
  out.growth = growth;
  return out;
}

Gauge power_gauge(double exponent) {
  return [exponent](double t) { return std::pow(t, exponent); };
}

}  // namespace

const char* to_string(CheckKind kind) noexcept {
  switch (kind) {
    case CheckKind::fit_only:
      return "fit";
    case CheckKind::rate:
      return "rate";
    case CheckKind::two_sided:
      return "two_sided";
    case CheckKind::upper:
      return "upper";
  }
  return "unknown";
}

DecayReport fit_decay_rate(std::span<const Sample> samples) {
  DecayReport report;
  report.samples.assign(samples.begin(), samples.end());
  if (samples.size() < kMinSamples) {
    report.note = "need at least 8 samples, got " + std::to_string(samples.size());
    return report;
  }
  for (const auto& s : samples) {
    if (!(s.t > 0.0) || !std::isfinite(s.t)) {
      report.note = "nonpositive time t = " + describe_t(s.t);
      return report;
    }
    if (!(s.value > 0.0) || !std::isfinite(s.value)) {
      report.note = "nonpositive value at t = " + describe_t(s.t);
      return report;
    }
  }

  const auto count = static_cast<double>(samples.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& s : samples) {
    mx += std::log(s.t);
    my += std::log(s.value);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.t) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(s.value) - my);
  }
  if (!(sxx > 0.0)) {
    report.note = "sample times are not distinct";
    return report;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (const auto& s : samples) {
    const double res = std::log(s.value) - (intercept + slope * std::log(s.t));
    ssr += res * res;
  }
  report.fitted_slope = slope;
  report.slope_stderr = std::sqrt(ssr / (count - 2.0) / sxx);
  report.pass = true;
  return report;
}

DecayReport check_rate(std::span<const Sample> samples, double predicted, double tolerance,
                       double spread_bound) {
  DecayReport report = fit_decay_rate(samples);
  report.kind = CheckKind::rate;
  report.predicted_slope = predicted;
  report.tolerance = tolerance;
  report.bound = spread_bound;
  report.gauge_label = "t^predicted";
  if (!report.pass) return report;
  const auto norm = normalize(samples, power_gauge(predicted));
  report.ratio_spread = norm.spread;
  report.growth = norm.growth;
  const bool slope_ok = std::abs(report.fitted_slope - predicted) <= tolerance;
  const bool spread_ok = !(norm.spread > spread_bound);
  report.pass = slope_ok && spread_ok;
  if (!slope_ok) report.note = "fitted slope outside predicted +- tolerance";
  else if (!spread_ok) report.note = "ratio spread exceeds bound";
  return report;
}

DecayReport check_two_sided(std::span<const Sample> samples, Gauge gauge, std::string gauge_label,
                            double predicted, double bound) {
  DecayReport report = fit_decay_rate(samples);
  report.kind = CheckKind::two_sided;
  report.predicted_slope = predicted;
  report.bound = bound;
  report.gauge_label = std::move(gauge_label);
  if (!report.pass) return report;
  const auto norm = normalize(samples, gauge);
  report.ratio_spread = norm.spread;
  report.growth = norm.growth;
  report.pass = norm.spread <= bound;
  if (!report.pass) report.note = "ratio spread exceeds bound";
  return report;
}

DecayReport check_upper(std::span<const Sample> samples, Gauge gauge, std::string gauge_label,
                        double predicted, double growth_bound, double slope_tolerance) {
  DecayReport report = fit_decay_rate(samples);
  report.kind = CheckKind::upper;
  report.predicted_slope = predicted;
  report.bound = growth_bound;
  report.tolerance = slope_tolerance;
  report.gauge_label = std::move(gauge_label);
  if (!report.pass) return report;
  const auto norm = normalize(samples, gauge);
  report.ratio_spread = norm.spread;
  report.growth = norm.growth;
  const bool growth_ok = norm.growth <= growth_bound;
  const bool slope_ok = report.fitted_slope <= predicted + slope_tolerance;
  report.pass = growth_ok && slope_ok;
  if (!growth_ok) report.note = "normalized value grows beyond bound";
  else if (!slope_ok) report.note = "decays slower than the bound";
  return report;
}

DecayReport check_log_ratio(std::span<const Sample> samples, double power, double bound) {
  for (const auto& s : samples) {
    if (!(s.t > 1.0)) {
      DecayReport report = fit_decay_rate(samples);
      report.kind = CheckKind::two_sided;
      report.pass = false;
      report.note = "log-ratio mode needs t > 1, got t = " + describe_t(s.t);
      return report;
    }
  }
  auto report = check_two_sided(
      samples, [power](double t) { return std::pow(std::log(t), power); },
      power == 1.0 ? "log t" : "log(t)^" + describe_t(power), 0.0, bound);
  report.predicted_slope = kNaN;
  return report;
}

}  // namespace dampwave::harness
