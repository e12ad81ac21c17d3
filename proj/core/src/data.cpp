#include "dampwave/data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dampwave/quadrature.hpp"

namespace dampwave::data {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int n) {
  if (n < 1) throw std::invalid_argument("initial datum: dimension must be >= 1");
}

}  // namespace

struct SpectralBuilder {
  static InitialDatum build(std::function<double(double)> profile, int n,
                            const DeclaredNorms& norms, std::string label) {
    InitialDatum d;
    d.profile_ = std::move(profile);
    d.mass_ = d.profile_(0.0);
    d.norm_l1_ = norms.norm_l1;
    d.norm_l11_ = norms.norm_l11;
    d.support_radius_ = norms.support_radius;
    d.n_ = n;
    d.label_ = std::move(label);
    d.sobolev_ = [profile = d.profile_, n, support = norms.support_radius](double ell) {
      if (ell < 0.0) throw std::invalid_argument("sobolev: order must be >= 0");
      quad::RadialIntegrand f;
      f.n = n;
      f.eval = [&profile, ell](double r) {
        const double u = profile(r);
        return u == 0.0 ? 0.0 : std::pow(r, 2.0 * ell) * u * u;
      };
      double integral = 0.0;
      if (std::isfinite(support)) {
        quad::PlanRequest req;
        req.upper = support;
        req.tolerance = 1e-12;
        req.min_panels = 64;
        integral = quad::integrate_radial(f, quad::make_plan(req)).value;
      } else {
        integral = quad::integrate_semi_infinite(f, 1e-12).value;
      }
      return std::sqrt(integral / std::pow(2.0 * kPi, n));
    };
    d.zero_ = false;
    return d;
  }
};

InitialDatum make_gaussian(double a, double amplitude, int n) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("make_gaussian: width parameter a must be > 0");
  if (!std::isfinite(amplitude))
    throw std::invalid_argument("make_gaussian: amplitude must be finite");
  require_dimension(n);

  InitialDatum d;
  const double scale = std::pow(kPi / a, 0.5 * n);
  const double peak = amplitude * scale;
  const double inv4a = 1.0 / (4.0 * a);
  d.profile_ = [peak, inv4a](double r) { return peak * std::exp(-r * r * inv4a); };
  d.a_part_ = [peak, inv4a](double r) { return peak * std::expm1(-r * r * inv4a); };
  d.mass_ = peak;
  d.norm_l1_ = std::abs(amplitude) * scale;
  const double omega = quad::sphere_measure(n);
  d.norm_l11_ = std::abs(amplitude) *
                (scale + omega * std::tgamma(0.5 * (n + 1)) / (2.0 * std::pow(a, 0.5 * (n + 1))));
  // ∫ r^{2ℓ} |û|² dξ = peak² ω/2 (2a)^{ℓ+n/2} Γ(ℓ+n/2)
  d.sobolev_ = [peak, a, n, omega](double ell) {
    if (ell < 0.0) throw std::invalid_argument("sobolev: order must be >= 0");
    const double k = ell + 0.5 * n;
    const double integral = peak * peak * 0.5 * omega * std::pow(2.0 * a, k) * std::tgamma(k);
    return std::sqrt(integral / std::pow(2.0 * kPi, n));
  };
  d.support_radius_ = amplitude == 0.0 ? 0.0 : std::sqrt(160.0 * a);
  d.n_ = n;
  d.label_ = "gaussian(a=" + std::to_string(a) + ",amplitude=" + std::to_string(amplitude) + ")";
  d.zero_ = amplitude == 0.0;
  return d;
}

InitialDatum make_zero(int n) {
  require_dimension(n);
  InitialDatum d;
  d.profile_ = [](double) { return 0.0; };
  d.sobolev_ = [](double ell) {
    if (ell < 0.0) throw std::invalid_argument("sobolev: order must be >= 0");
    return 0.0;
  };
  d.n_ = n;
  d.label_ = "zero";
  d.zero_ = true;
  return d;
}

InitialDatum make_spectral(std::function<double(double)> profile, int n,
                           const DeclaredNorms& norms, std::string label) {
  require_dimension(n);
  if (!profile) throw std::invalid_argument("make_spectral: profile is empty");
  const double mass = profile(0.0);
  if (!std::isfinite(mass))
    throw std::invalid_argument("make_spectral: profile must be finite at r = 0");
  const double slack = 1e-12;
  if (norms.norm_l1 < std::abs(mass) * (1.0 - slack) ||
      norms.norm_l11 < norms.norm_l1 * (1.0 - slack))
    throw std::invalid_argument(
        "make_spectral: declared norms violate norm_l11 >= norm_l1 >= |mass|");

  const double L = continuity_constants().L;
  bool all_zero = mass == 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double r = std::pow(10.0, -6.0 + 8.0 * i / 400.0);
    const double u = profile(r);
    if (!std::isfinite(u))
      throw std::invalid_argument("make_spectral: profile is not finite at r = " +
                                  std::to_string(r));
    all_zero = all_zero && u == 0.0;
    const double lhs = std::abs(u - mass);
    const double rhs = L * r * norms.norm_l11;
    if (lhs > rhs * (1.0 + slack) + 1e-15 * std::abs(mass))
      throw std::invalid_argument(
          "make_spectral: |u_hat(r) - u_hat(0)| <= L r ||u||_{1,1} fails at r = " +
          std::to_string(r) + " (declared norms inconsistent with the profile)");
  }

  if (all_zero && norms.norm_l1 == 0.0) {
    InitialDatum z = make_zero(n);
    return z;
  }
  return SpectralBuilder::build(std::move(profile), n, norms, std::move(label));
}

const ContinuityConstants& continuity_constants() {
  static const ContinuityConstants constants = [] {
    // (1 - cos s)/s is unimodal on (0, 2π).
    const auto f = [](double s) { return (1.0 - std::cos(s)) / s; };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 1e-3;
    double b = 2.0 * kPi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = f(d);
      }
    }
    ContinuityConstants out;
    out.L_argmax = 0.5 * (a + b);
    out.L = f(out.L_argmax);
    out.M = 1.0;
    return out;
  }();
  return constants;
}

DatumValues values_at(const InitialDatum& d0, const InitialDatum& d1, double r) {
  return {d0.u_hat(r), d1.u_hat(r), d0.a_part(r), d1.a_part(r)};
}

ProfileParams masses(const InitialDatum& d0, const InitialDatum& d1) {
  return {d0.mass(), d1.mass()};
}

RemainderTerms remainder_terms(const ModelParams& params, double t, double r,
                               const InitialDatum& d0, const InitialDatum& d1,
                               double delta0) {
  return dampwave::remainder_terms(params, t, r, values_at(d0, d1, r), masses(d0, d1),
                                   delta0);
}

}  // namespace dampwave::data
