#pragma once

// Model parameters for u_tt - Δu + (-Δ)^θ u_t = 0 on R^n.
//
// In Fourier space each frequency modulus r = |ξ| evolves independently
// under the symbol λ² + r^{2θ} λ + r² = 0.

namespace dampwave {

class ModelParams {
 public:
  // Throws std::invalid_argument unless theta > 1 and n >= 1.
  ModelParams(double theta, int n);

  double theta() const noexcept { return theta_; }
  int n() const noexcept { return n_; }

  // r^{2θ}: coefficient of û_t.
  double damping(double r) const;
  // r^{4θ-2} - 4: sign decides the root regime (negative = oscillatory).
  double discriminant_indicator(double r) const;
  // Frequency where r^{4θ-2} = 4 (double root).
  double critical_radius() const;

  bool is_ggh() const noexcept { return theta_ == 2.0; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double theta_;
  int n_;
};

}  // namespace dampwave
