#include "dampwave/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace dampwave {

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::oscillatory: return "oscillatory";
    case Regime::critical: return "critical";
    case Regime::overdamped: return "overdamped";
  }
  return "unknown";
}

namespace detail {

double sinc(double x) noexcept {
  const double x2 = x * x;
  if (std::abs(x) < 0.1)
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  return std::sin(x) / x;
}

double sinhc(double x) noexcept {
  const double x2 = x * x;
  if (std::abs(x) < 0.1)
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)));
  return std::sinh(x) / x;
}

}  // namespace detail

RootPair characteristic_roots(const ModelParams& params, double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw std::invalid_argument("characteristic_roots: r must be finite and >= 0");

  RootPair out;
  out.r = r;
  out.stiffness = r * r;
  if (r == 0.0) {
    out.regime = Regime::critical;
    return out;
  }

  const double b = params.damping(r);
  const double q = params.discriminant_indicator(r);
  out.mean = -0.5 * b;
  out.gap = 0.5 * r * std::sqrt(std::abs(q));

  if (q < 0.0) {
    out.imaginary_gap = true;
    out.sigma1 = {out.mean, out.gap};
    out.sigma2 = {out.mean, -out.gap};
  } else {
    // Large-magnitude root first, the small one through Vieta.
    const double big = out.mean - out.gap;
    out.sigma2 = big;
    out.sigma1 = out.stiffness / big;
  }

  if (std::abs(q) < kConfluenceThreshold)
    out.regime = Regime::critical;
  else
    out.regime = q < 0.0 ? Regime::oscillatory : Regime::overdamped;
  return out;
}

SpectralState evolve_exact(const RootPair& roots, complex u0, complex u1, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("evolve_exact: t must be finite and >= 0");

  SpectralState out{u0, u1, roots.r, t};
  if (t == 0.0) return out;

  const double z = roots.gap * t;

  if (!roots.imaginary_gap && z > 0.5) {
    // Well separated real roots: two decaying exponentials, no cancellation.
    const double s1 = roots.sigma1.real();
    const double s2 = roots.sigma2.real();
    const double e1 = std::exp(s1 * t);
    const double e2 = std::exp(s2 * t);
    const complex c1 = (u1 - s2 * u0) * e1;
    const complex c2 = (u1 - s1 * u0) * e2;
    const double inv = 1.0 / (2.0 * roots.gap);
    out.u_hat = (c1 - c2) * inv;
    out.v_hat = (s1 * c1 - s2 * c2) * inv;
    return out;
  }

  // u = e^{mt} [C u0 + S (u1 - m u0)],  u_t = e^{mt} [C u1 + S (m u1 - r² u0)]
  // with C = cosh(δt), S = sinh(δt)/δ and δ the (possibly imaginary) half gap.
  double c = 0.0;
  double s = 0.0;
  if (roots.imaginary_gap) {
    c = std::cos(z);
    s = t * detail::sinc(z);
  } else {
    c = std::cosh(z);
    s = t * detail::sinhc(z);
  }
  const double m = roots.mean;
  const double e = std::exp(m * t);
  out.u_hat = e * (c * u0 + s * (u1 - m * u0));
  out.v_hat = e * (c * u1 + s * (m * u1 - roots.stiffness * u0));
  return out;
}

double rho(const ModelParams& params, double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("rho: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double num = params.damping(r);
  const double den = 1.0 + std::pow(r, 4.0 * params.theta() - 2.0);
  return num / den;
}

}  // namespace dampwave
