#include "dampwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dampwave/gauss_legendre.hpp"

namespace dampwave::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier compensated sum; keeps long panel sums order-stable and accurate.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct PanelEstimate {
  double value = 0.0;  // refined (two half panels)
  double error = 0.0;  // |refined - coarse|
  double mass = 0.0;   // Σ |w f| of the refined rule
};

class PanelRule {
 public:
  PanelRule(const std::function<double(double)>& f, int p)
      : f_(f), rule_(gauss_legendre(p)) {}

  double apply(double a, double b, double& mass) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < rule_.points(); ++i) {
      const double v = rule_.weights[i] * f_(mid + half * rule_.nodes[i]);
      sum += v;
      mass += std::abs(v);
    }
    evaluations_ += static_cast<std::size_t>(rule_.points());
    return sum * half;
  }

  PanelEstimate estimate(double a, double b) const {
    double coarse_mass = 0.0;
    const double coarse = apply(a, b, coarse_mass);
    const double mid = 0.5 * (a + b);
    PanelEstimate out;
    double left_mass = 0.0;
    double right_mass = 0.0;
    out.value = apply(a, mid, left_mass) + apply(mid, b, right_mass);
    out.mass = 0.5 * (mid - a) * left_mass + 0.5 * (b - mid) * right_mass;
    out.error = std::abs(out.value - coarse);
    return out;
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const std::function<double(double)>& f_;
  const GaussLegendreRule& rule_;
  mutable std::size_t evaluations_ = 0;
};

// Bisect until the panel error is within its budget; returns leaf sums.
// A panel whose error stops shrinking under bisection is limited by rounding
// in the integrand and is accepted once that has happened twice on its path.
void refine(const PanelRule& rule, double a, double b, const PanelEstimate& est,
            double budget, double density, int depth, int stalls, CompensatedSum& value,
            CompensatedSum& error, CompensatedSum& mass, bool& converged) {
  const auto accept = [&] {
    value.add(est.value);
    error.add(est.error);
    mass.add(est.mass);
  };
  if (est.error <= budget || est.error <= 64.0 * kEps * est.mass) return accept();
  if (depth == 0 || stalls >= 2) {
    converged = false;
    return accept();
  }
  const double mid = 0.5 * (a + b);
  const PanelEstimate left = rule.estimate(a, mid);
  const PanelEstimate right = rule.estimate(mid, b);
  const int next_stalls = left.error + right.error > 0.5 * est.error ? stalls + 1 : stalls;
  refine(rule, a, mid, left, density * (mid - a), density, depth - 1, next_stalls, value, error,
         mass, converged);
  refine(rule, mid, b, right, density * (b - mid), density, depth - 1, next_stalls, value, error,
         mass, converged);
}


void append_uniform(std::vector<double>& breaks, double hi, double max_width) {
  const double lo = breaks.back();
  if (!(hi > lo)) return;
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / max_width - 1e-12));
  const std::size_t panels = std::max<std::size_t>(count, 1);
  for (std::size_t i = 1; i < panels; ++i)
    breaks.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(panels));
  breaks.push_back(hi);
}

void append_geometric(std::vector<double>& breaks, double hi, double ratio) {
  double lo = breaks.back();
  if (!(hi > lo)) return;
  if (lo <= 0.0) {
    breaks.push_back(hi);
    return;
  }
  const int count = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio))));
  for (int i = 1; i < count; ++i)
    breaks.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / count));
  breaks.push_back(hi);
}

}  // namespace

double sphere_measure(int n) {
  if (n < 1) throw std::invalid_argument("sphere_measure: n must be >= 1");
  if (n == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, int points_per_panel,
                                  double tolerance, int max_depth,
                                  double absolute_tolerance) {
  QuadratureResult out;
  if (breakpoints.size() < 2) return out;
  if (!(tolerance > 0.0))
    throw std::invalid_argument("integrate_panels: tolerance must be > 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("integrate_panels: breakpoints must increase strictly");

  const PanelRule rule(f, points_per_panel);
  const std::size_t panels = breakpoints.size() - 1;
  std::vector<PanelEstimate> first(panels);

  CompensatedSum value;
  CompensatedSum error;
  CompensatedSum mass;
  for (std::size_t i = 0; i < panels; ++i) {
    first[i] = rule.estimate(breakpoints[i], breakpoints[i + 1]);
    value.add(first[i].value);
    error.add(first[i].error);
    mass.add(first[i].mass);
  }

  const double target = std::max(tolerance * std::abs(value.value()), absolute_tolerance);
  const double floor = 64.0 * kEps * mass.value();
  if (error.value() > std::max(target, floor)) {
    // Second pass: bisect the panels that exceed their length-weighted share.
    const double length = breakpoints.back() - breakpoints.front();
    const double density = std::max(target, floor) / length;
    CompensatedSum v2;
    CompensatedSum e2;
    CompensatedSum m2;
    bool converged = true;
    for (std::size_t i = 0; i < panels; ++i) {
      const double a = breakpoints[i];
      const double b = breakpoints[i + 1];
      refine(rule, a, b, first[i], density * (b - a), density, max_depth, 0, v2, e2, m2,
             converged);
    }
    value = v2;
    error = e2;
    mass = m2;
    out.converged = converged;
  }

  out.value = value.value();
  out.error = error.value() + 16.0 * kEps * mass.value();
  out.evaluations = rule.evaluations();
  if (!std::isfinite(out.value)) out.converged = false;
  return out;
}

QuadraturePlan make_plan(const PlanRequest& req) {
  if (!(req.lower >= 0.0))
    throw std::invalid_argument("make_plan: lower limit must be >= 0");
  if (req.points_per_panel < 1)
    throw std::invalid_argument("make_plan: points_per_panel must be >= 1");

  QuadraturePlan plan;
  plan.points_per_panel = req.points_per_panel;
  plan.tolerance = req.tolerance;
  plan.absolute_tolerance = req.absolute_tolerance;

  double decay_radius = std::numeric_limits<double>::infinity();
  if (req.decay_rate > 0.0)
    decay_radius = std::pow(kTailExponent / req.decay_rate, 1.0 / req.decay_power);

  double radius = std::min(req.upper, req.support_radius);
  if (req.decay_truncates) radius = std::min(radius, decay_radius);
  if (!std::isfinite(radius))
    throw std::invalid_argument(
        "make_plan: no finite truncation radius; use integrate_semi_infinite");
  plan.truncation_radius = radius;
  plan.panels.push_back(req.lower);
  if (!(radius > req.lower)) {
    plan.panels.clear();
    return plan;
  }

  const double band = std::min(radius, decay_radius);
  double width = (band - req.lower) / req.min_panels;
  if (req.oscillation_frequency > 0.0) {
    plan.oscillation_period = 2.0 * std::numbers::pi / req.oscillation_frequency;
    plan.oscillation_cutoff = band;
    append_uniform(plan.panels, band, std::min(width, plan.oscillation_period));
  }
  append_uniform(plan.panels, band, width);
  // Beyond the damped band: geometric panels, refined adaptively if needed.
  append_geometric(plan.panels, radius, 1.25);
  return plan;
}

QuadratureResult integrate_line(const std::function<double(double)>& f,
                                const QuadraturePlan& plan) {
  return integrate_panels(f, plan.panels, plan.points_per_panel, plan.tolerance,
                          plan.max_depth, plan.absolute_tolerance);
}

namespace {

std::function<double(double)> radial_weighted(const RadialIntegrand& f) {
  if (!f.eval) throw std::invalid_argument("RadialIntegrand: eval is empty");
  if (f.n < 1) throw std::invalid_argument("RadialIntegrand: n must be >= 1");
  if (f.singular_order < 0 || f.singular_order > f.n - 1)
    throw std::invalid_argument("RadialIntegrand: singular_order must lie in [0, n-1]");
  const int power = f.n - 1 - f.singular_order;
  const double omega = sphere_measure(f.n);
  return [eval = f.eval, power, omega](double r) {
    double w = omega;
    for (int i = 0; i < power; ++i) w *= r;
    return w * eval(r);
  };
}

}  // namespace

QuadratureResult integrate_radial(const RadialIntegrand& f, const QuadraturePlan& plan) {
  return integrate_line(radial_weighted(f), plan);
}

QuadratureResult integrate_semi_infinite(const RadialIntegrand& f, double tolerance,
                                         int points_per_panel) {
  const auto g = radial_weighted(f);
  const std::function<double(double)> mapped = [&g](double s) {
    const double one_minus = 1.0 - s;
    const double r = s / one_minus;
    const double v = g(r);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  std::vector<double> breaks{0.0};
  // Uniform on [0, 1/2], then halving towards s = 1.
  for (int i = 1; i <= 8; ++i) breaks.push_back(0.5 * i / 8.0);
  double gap = 0.5;
  for (int k = 0; k < 48; ++k) {
    const double lo = 1.0 - gap;
    gap *= 0.5;
    const double hi = 1.0 - gap;
    for (int i = 1; i <= 4; ++i) breaks.push_back(lo + (hi - lo) * i / 4.0);
  }
  return integrate_panels(mapped, breaks, points_per_panel, tolerance);
}

QuadratureResult l2_distance_sq(const SpectralFunction& a, const SpectralFunction& b, int n,
                                const QuadraturePlan& plan) {
  RadialIntegrand f;
  f.n = n;
  f.eval = [&a, &b](double r) { return std::norm(a(r) - b(r)); };
  return integrate_radial(f, plan);
}

}  // namespace dampwave::quad
