#include "dampwave/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dampwave/spectral.hpp"

namespace dampwave {

namespace {

void require_ggh(const ModelParams& params, const char* what) {
  if (!params.is_ggh())
    throw std::invalid_argument(std::string(what) + ": only defined for theta = 2");
}

}  // namespace

double profile_hat(const ModelParams& params, double t, double r, const ProfileParams& p) {
  require_ggh(params, "profile_hat");
  if (!(t >= 0.0) || !(r >= 0.0))
    throw std::invalid_argument("profile_hat: t and r must be >= 0");
  const double r2 = r * r;
  const double e = std::exp(-0.5 * t * r2 * r2);
  const double b = t * r;
  return e * (p.mass1 * t * detail::sinc(b) + p.mass0 * std::cos(b));
}

double RemainderTerms::envelope_sum(const ProfileParams& p) const {
  return std::abs(p.mass1) * env4 + std::abs(p.mass0) * env5 + env6;
}

RemainderTerms remainder_terms(const ModelParams& params, double t, double r,
                               const DatumValues& data, const ProfileParams& p,
                               double delta0) {
  require_ggh(params, "remainder_terms");
  if (!(delta0 > 0.0 && delta0 < params.critical_radius()))
    throw std::invalid_argument("remainder_terms: delta0 must lie in (0, 4^{1/6})");
  if (!(r > 0.0 && r <= delta0))
    throw std::invalid_argument("remainder_terms: r must lie in (0, delta0]");
  if (!(t >= 0.0))
    throw std::invalid_argument("remainder_terms: t must be >= 0");

  const double r2 = r * r;
  const double r3 = r2 * r;
  const double r6 = r3 * r3;
  const double s = std::sqrt(4.0 - r6);
  const double e = std::exp(-0.5 * t * r2 * r2);
  const double a = 0.5 * t * r * s;  // phase of the exact solution
  const double b = t * r;            // phase of the profile

  // (e^{σ₁t} - e^{σ₂t})/(σ₁ - σ₂) and (σ₁e^{σ₂t} - σ₂e^{σ₁t})/(σ₁ - σ₂)
  const double sin_a = std::sin(a);
  const double kernel1 = e * t * detail::sinc(a);
  const double kernel0 = r3 * e * sin_a / s + e * std::cos(a);

  RemainderTerms out;
  out.k1 = p.mass0 * r3 * e * sin_a / s;
  const double a1 = std::isnan(data.a1) ? data.u1_hat - p.mass1 : data.a1;
  const double a0 = std::isnan(data.a0) ? data.u0_hat - p.mass0 : data.a0;
  out.k2 = a1 * kernel1;
  out.k3 = a0 * kernel0;

  out.env4 = t * e * r6 / s;
  out.env5 = t * r * e * r6 / 2.0;
  out.env6 = std::abs(p.mass1) * e * t * 6.0 * r6 / (s * s * s);

  // a - b = -t r⁷ / (2 + s): use half-angle forms so nothing cancels.
  const double half_diff = -0.25 * t * r * r6 / (2.0 + s);
  const double half_sum = 0.5 * (a + b);
  const double sinc_d = detail::sinc(half_diff);
  const double wave_part =
      e * ((4.0 / s) * std::cos(half_sum) * (-0.25 * t * r6 / (2.0 + s)) * sinc_d +
           r6 / (s * (2.0 + s)) * t * detail::sinc(b));
  const double cos_part = -2.0 * e * std::sin(half_sum) * std::sin(half_diff);
  out.mean_value_part = p.mass1 * wave_part + p.mass0 * cos_part;
  return out;
}

}  // namespace dampwave
