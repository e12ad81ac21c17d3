#pragma once

#include <complex>
#include <limits>

#include "dampwave/model.hpp"

namespace dampwave {

// Masses of the two initial data; P_j = û_j(0).
struct ProfileParams {
  double mass0 = 0.0;  // P₀
  double mass1 = 0.0;  // P₁
};

// Low-frequency cutoff for the remainder decomposition.
inline constexpr double kDefaultDelta0 = 0.5;

// Diffusion-wave profile for θ = 2:
//   e^{-t r⁴/2} (P₁ sin(t r)/r + P₀ cos(t r)),  with sin(tr)/r → t at r = 0.
// Throws std::invalid_argument if params.theta() != 2.
double profile_hat(const ModelParams& params, double t, double r, const ProfileParams& p);

// Spectral values of the two data at one frequency (radial real data).
// a0, a1 optionally carry A_j = û_j - P_j evaluated without cancellation;
// NaN means "form û_j - P_j".
struct DatumValues {
  double u0_hat = 0.0;
  double u1_hat = 0.0;
  double a0 = std::numeric_limits<double>::quiet_NaN();
  double a1 = std::numeric_limits<double>::quiet_NaN();
};

// Splitting of the exact θ = 2 solution at 0 < r ≤ δ₀:
//   û = profile + K₁ + K₂ + K₃ + mean_value_part
// where mean_value_part = P₁K₄ - P₀K₅ + K₆ collects the terms that the
// mean value theorem turns into inequalities. The K₄..K₆ themselves contain
// unknown intermediate points, so only their envelopes are exposed:
//   |mean_value_part| ≤ |P₁|·env4 + |P₀|·env5 + env6.
struct RemainderTerms {
  std::complex<double> k1;
  std::complex<double> k2;
  std::complex<double> k3;
  double env4 = 0.0;
  double env5 = 0.0;
  double env6 = 0.0;
  double mean_value_part = 0.0;  // evaluated without cancellation

  double envelope_sum(const ProfileParams& p) const;
};

// Requires θ = 2, t ≥ 0, 0 < r ≤ delta0 and delta0 < 4^{1/6}.
RemainderTerms remainder_terms(const ModelParams& params, double t, double r,
                               const DatumValues& data, const ProfileParams& p,
                               double delta0 = kDefaultDelta0);

}  // namespace dampwave
