#include <algorithm>
#include <cmath>

#include "dampwave/harness.hpp"
#include "dampwave/spectral.hpp"

namespace dampwave::harness {

namespace {

void require_dimension(int n) {
  if (n < 1 || n > 5) throw HypothesisError("optimality suite covers 1 <= n <= 5");
}

quad::PlanRequest decaying(double rate, double frequency, const RunOptions& opts) {
  quad::PlanRequest req;
  req.decay_rate = rate;
  req.decay_power = 4.0;
  req.oscillation_frequency = frequency;
  req.tolerance = opts.quad_tolerance;
  req.points_per_panel = opts.points_per_panel;
  return req;
}

double cosine_moment(int power, double t, const RunOptions& opts) {
  const double omega = 2.0 * std::pow(t, 0.75);
  const auto f = [power, omega](double x) {
    return std::exp(-x * x * x * x) * std::pow(x, power) * std::cos(omega * x);
  };
  // The value falls far below ∫|f| ≤ Γ((power+1)/4)/4 as t grows, so the error
  // is measured against that mass.
  auto req = decaying(1.0, omega, opts);
  req.absolute_tolerance = opts.quad_tolerance * 0.25 * std::tgamma((power + 1) / 4.0);
  return quad::integrate_line(f, quad::make_plan(req)).value;
}

}  // namespace

quad::QuadratureResult sin2_integral(int n, double t, const RunOptions& opts) {
  if (n < 1) throw HypothesisError("n >= 1 required");
  if (!(t > 0.0)) throw std::invalid_argument("sin2_integral: t must be > 0");
  quad::RadialIntegrand f;
  f.n = n;
  if (n >= 3) {
    // |ξ|^{-2} folded into the radial weight.
    f.singular_order = 2;
    f.eval = [t](double r) {
      const double s = std::sin(t * r);
      return std::exp(-t * r * r * r * r) * s * s;
    };
  } else {
    f.eval = [t](double r) {
      const double s = t * detail::sinc(t * r);
      return std::exp(-t * r * r * r * r) * s * s;
    };
  }
  return quad::integrate_radial(f, quad::make_plan(decaying(t, t, opts)));
}

quad::QuadratureResult cos2_integral(int n, double t, const RunOptions& opts) {
  if (n < 1) throw HypothesisError("n >= 1 required");
  if (!(t > 0.0)) throw std::invalid_argument("cos2_integral: t must be > 0");
  quad::RadialIntegrand f;
  f.n = n;
  f.eval = [t](double r) {
    const double c = std::cos(t * r);
    return std::exp(-t * r * r * r * r) * c * c;
  };
  return quad::integrate_radial(f, quad::make_plan(decaying(t, t, opts)));
}

double a0_constant(int n) {
  if (n < 3) throw HypothesisError("A0 is finite only for n >= 3");
  return 0.25 * std::tgamma((n - 2) / 4.0);
}

double b0_constant(int n) {
  if (n < 1) throw HypothesisError("n >= 1 required");
  return 0.25 * std::tgamma(n / 4.0);
}

double riemann_lebesgue_f(int n, double t, const RunOptions& opts) {
  if (n < 3) throw HypothesisError("F_n is defined for n >= 3");
  return cosine_moment(n - 3, t, opts);
}

double riemann_lebesgue_g(int n, double t, const RunOptions& opts) {
  if (n < 1) throw HypothesisError("n >= 1 required");
  return cosine_moment(n - 1, t, opts);
}

OptimalitySuite optimality_suite(int n, std::span<const double> t_grid, const RunOptions& opts) {
  require_dimension(n);
  for (double t : t_grid)
    if (!(t > 1.0)) throw std::invalid_argument("optimality suite needs t > 1");

  OptimalitySuite suite;
  suite.n = n;
  suite.b0 = b0_constant(n);
  if (n >= 3) suite.a0 = a0_constant(n);
  const double omega = quad::sphere_measure(n);

  suite.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), opts.threads, [&](std::size_t i) {
    const double t = t_grid[i];
    OptimalityRow row;
    row.t = t;
    row.sin2 = sin2_integral(n, t, opts).value;
    row.cos2 = cos2_integral(n, t, opts).value;
    if (n >= 3) {
      row.f_n = riemann_lebesgue_f(n, t, opts);
      row.g_n = riemann_lebesgue_g(n, t, opts);
      const double sin2_id = 0.5 * omega * std::pow(t, -(n - 2) / 4.0) * (suite.a0 - row.f_n);
      const double cos2_id = 0.5 * omega * std::pow(t, -n / 4.0) * (suite.b0 + row.g_n);
      row.sin2_identity_defect = std::abs(row.sin2 - sin2_id) / row.sin2;
      row.cos2_identity_defect = std::abs(row.cos2 - cos2_id) / row.cos2;
    } else {
      row.g_n = kNaN;
      row.cos2_identity_defect = kNaN;
    }
    suite.rows[i] = row;
  });

  std::vector<Sample> sin2;
  std::vector<Sample> cos2;
  for (const auto& row : suite.rows) {
    sin2.push_back({row.t, row.sin2});
    cos2.push_back({row.t, row.cos2});
    if (n >= 3) {
      if (row.t >= suite.rl_threshold && std::abs(row.f_n) > 0.5 * suite.a0)
        suite.riemann_lebesgue_ok = false;
      suite.max_identity_defect = std::max(
          {suite.max_identity_defect, row.sin2_identity_defect, row.cos2_identity_defect});
    }
  }

  if (n >= 3) {
    auto s = check_rate(sin2, -(n - 2) / 4.0, 0.03);
    s.name = "lemma41_sin2";
    suite.reports.push_back(std::move(s));
  } else if (n == 1) {
    auto s = check_rate(sin2, 1.0, 0.05, 3.0);
    s.name = "lemma42_sin2";
    suite.reports.push_back(std::move(s));
  } else {
    auto s = check_log_ratio(sin2, 1.0, 2.0);
    s.name = "lemma42_sin2";
    suite.reports.push_back(std::move(s));
  }
  auto c = check_rate(cos2, -n / 4.0, 0.03);
  c.name = "lemma41_cos2";
  suite.reports.push_back(std::move(c));

  suite.pass = suite.riemann_lebesgue_ok && suite.max_identity_defect <= 1e-6;
  for (const auto& r : suite.reports) suite.pass = suite.pass && r.pass;
  return suite;
}

}  // namespace dampwave::harness
