#pragma once

#include <complex>

#include "dampwave/model.hpp"

namespace dampwave {

using complex = std::complex<double>;

enum class Regime { oscillatory, critical, overdamped };

const char* to_string(Regime regime) noexcept;

// |r^{4θ-2} - 4| below this is tagged critical.
inline constexpr double kConfluenceThreshold = 1e-6;

// Roots of λ² + r^{2θ} λ + r² = 0 written as mean ± half_gap.
//
// half_gap is i·gap in the oscillatory case and +gap otherwise, so the
// evolution can be written without dividing by σ₁ - σ₂.
struct RootPair {
  complex sigma1;
  complex sigma2;
  Regime regime = Regime::critical;
  double r = 0.0;

  double mean = 0.0;       // -r^{2θ}/2
  double gap = 0.0;        // |σ₁ - σ₂| / 2
  bool imaginary_gap = false;
  double stiffness = 0.0;  // r², the product σ₁σ₂
};

RootPair characteristic_roots(const ModelParams& params, double r);

struct SpectralState {
  complex u_hat;
  complex v_hat;  // û_t
  double r = 0.0;
  double t = 0.0;
};

// Exact solution of û'' + r^{2θ} û' + r² û = 0 with û(0) = u0_hat,
// û'(0) = u1_hat. The time derivative is analytic, not differenced.
SpectralState evolve_exact(const RootPair& roots, complex u0_hat, complex u1_hat,
                           double t);

// Key dissipation rate r^{2θ} / (1 + r^{4θ-2}).
double rho(const ModelParams& params, double r);

namespace detail {
// sin(x)/x and sinh(x)/x, series near zero.
double sinc(double x) noexcept;
double sinhc(double x) noexcept;
}  // namespace detail

}  // namespace dampwave
