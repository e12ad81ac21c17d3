#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "dampwave/profile.hpp"

namespace dampwave::data {

// Radial real initial datum described by its Fourier profile
// û(r) = ∫ e^{-i x·ξ} u(x) dx (non-normalized) and the norms the decay
// estimates consume. Immutable; copies share the underlying description.
class InitialDatum {
 public:
  double u_hat(double r) const { return profile_(r); }
  // û(0) = ∫ u dx.
  double mass() const noexcept { return mass_; }
  double norm_l1() const noexcept { return norm_l1_; }
  // ∫ (1 + |x|) |u| dx
  double norm_l11() const noexcept { return norm_l11_; }
  // ‖D^ℓ u‖ = ((2π)^{-n} ∫ |ξ|^{2ℓ} |û|² dξ)^{1/2}; ℓ = 0 is the L² norm.
  double sobolev(double ell) const { return sobolev_(ell); }
  double norm_l2() const { return sobolev(0.0); }
  // Radius beyond which |û| < e^{-40}·sup|û| (infinite when unknown).
  double support_radius() const noexcept { return support_radius_; }
  int n() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }
  bool is_zero() const noexcept { return zero_; }

  // A(r) = û(r) - P; B ≡ 0 for radial real data.
  double a_part(double r) const { return a_part_ ? a_part_(r) : u_hat(r) - mass_; }

 private:
  friend InitialDatum make_gaussian(double, double, int);
  friend InitialDatum make_zero(int);
  friend struct SpectralBuilder;

  std::function<double(double)> profile_;
  std::function<double(double)> a_part_;  // optional cancellation-free A
  std::function<double(double)> sobolev_;
  double mass_ = 0.0;
  double norm_l1_ = 0.0;
  double norm_l11_ = 0.0;
  double support_radius_ = 0.0;
  int n_ = 1;
  std::string label_;
  bool zero_ = false;
};

// u(x) = amplitude · e^{-a|x|²}; throws unless a > 0.
InitialDatum make_gaussian(double a, double amplitude, int n);

InitialDatum make_zero(int n);

// Norms that cannot be read off a spectral profile.
struct DeclaredNorms {
  double norm_l1 = 0.0;
  double norm_l11 = 0.0;
  // Radius where the profile has decayed; infinite means "integrate to ∞".
  double support_radius = std::numeric_limits<double>::infinity();
};

// Wraps a caller-supplied profile. Checks norm_l11 ≥ norm_l1 ≥ |û(0)| and the
// linear modulus of continuity |û(r) - û(0)| ≤ L·r·norm_l11 on a validation
// grid; throws std::invalid_argument if either fails. Sobolev norms are
// computed by quadrature of the profile.
InitialDatum make_spectral(std::function<double(double)> profile, int n,
                           const DeclaredNorms& norms, std::string label = "spectral");

// L = sup_{s≠0} |1 - cos s|/|s| and M = sup_{s≠0} |sin s|/|s| = 1.
struct ContinuityConstants {
  double L = 0.0;
  double M = 1.0;
  double L_argmax = 0.0;
};

// L by bounded golden-section maximization on (0, 2π); computed once.
const ContinuityConstants& continuity_constants();

DatumValues values_at(const InitialDatum& d0, const InitialDatum& d1, double r);

ProfileParams masses(const InitialDatum& d0, const InitialDatum& d1);

RemainderTerms remainder_terms(const ModelParams& params, double t, double r,
                               const InitialDatum& d0, const InitialDatum& d1,
                               double delta0 = kDefaultDelta0);

}  // namespace dampwave::data
