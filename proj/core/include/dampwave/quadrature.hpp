#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace dampwave::quad {

// Surface measure ω_{n-1} of the unit sphere in R^n (2 for n = 1).
double sphere_measure(int n);

// Radial integrand g(|ξ|) on R^n.
//
// eval returns the regular part h(r) = g(r)·r^{singular_order}; the factor
// r^{n-1-singular_order} is applied by the integrator, so eval is never asked
// to form r^{-k}. Requires 0 ≤ singular_order ≤ n-1.
struct RadialIntegrand {
  std::function<double(double)> eval;
  int n = 1;
  int singular_order = 0;
};

// Breakpoints of a composite Gauss–Legendre rule.
//
// When oscillation_period > 0 every panel on [panels.front(),
// oscillation_cutoff] is at most one period wide.
struct QuadraturePlan {
  double truncation_radius = 0.0;
  std::vector<double> panels;
  int points_per_panel = 16;
  double oscillation_period = 0.0;
  double oscillation_cutoff = 0.0;
  double tolerance = 1e-8;
  // Error target floor for integrals that cancel to far below their mass.
  double absolute_tolerance = 0.0;
  int max_depth = 24;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // panel-refinement estimate plus a rounding floor
  bool converged = true;
  std::size_t evaluations = 0;
};

// The integrand's magnitude is taken as e^{-tail_exponent} beyond the
// truncation radius.
inline constexpr double kTailExponent = 80.0;

struct PlanRequest {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  // Integrand carries exp(-decay_rate · r^decay_power).
  double decay_rate = 0.0;
  double decay_power = 4.0;
  // If false the decay only bounds the oscillatory band; the integrand may
  // still be non-negligible beyond it (exact solutions at high frequency).
  bool decay_truncates = true;
  // Phase grows like oscillation_frequency · r (sin(t r): frequency t).
  double oscillation_frequency = 0.0;
  // Data factor negligible beyond this radius.
  double support_radius = std::numeric_limits<double>::infinity();
  int points_per_panel = 16;
  double tolerance = 1e-8;
  double absolute_tolerance = 0.0;
  int min_panels = 32;
};

QuadraturePlan make_plan(const PlanRequest& request);

// ∫_{R^n} g(|ξ|) dξ = ω_{n-1} ∫ h(r) r^{n-1-k} dr over the plan's range.
QuadratureResult integrate_radial(const RadialIntegrand& f, const QuadraturePlan& plan);

// Plain ∫ f(r) dr over the plan's panels.
QuadratureResult integrate_line(const std::function<double(double)>& f,
                                const QuadraturePlan& plan);

// ∫_0^∞ by the map r = s/(1-s); f must decay integrably.
QuadratureResult integrate_semi_infinite(const RadialIntegrand& f, double tolerance = 1e-10,
                                         int points_per_panel = 16);

using SpectralFunction = std::function<std::complex<double>(double)>;

// ∫_{R^n} |a(|ξ|) - b(|ξ|)|² dξ.
QuadratureResult l2_distance_sq(const SpectralFunction& a, const SpectralFunction& b, int n,
                                const QuadraturePlan& plan);

// Composite rule over explicit breakpoints with adaptive bisection of the
// panels whose refinement error exceeds their share of
// max(tolerance·|value|, absolute_tolerance).
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, int points_per_panel,
                                  double tolerance, int max_depth = 24,
                                  double absolute_tolerance = 0.0);

}  // namespace dampwave::quad
