#pragma once

#include "dampwave/model.hpp"
#include "dampwave/spectral.hpp"

namespace dampwave {

// Pointwise energy functionals of one frequency mode.
//   e0 = ½|û_t|² + ½r²|û|²
//   e  = e0 + βρ Re(û_t conj(û)) + ½βρ r^{2θ}|û|²   (Lyapunov functional)
//   f  = r^{2θ}|û_t|² + βρ r²|û|²                  (dissipation)
//   rr = βρ|û_t|²                                  (defect, dE/dt + f = rr)
struct EnergySnapshot {
  double e0 = 0.0;
  double e = 0.0;
  double f = 0.0;
  double rr = 0.0;
  double beta = 0.0;
};

inline constexpr double kDefaultBeta = 0.1;

EnergySnapshot energy_snapshot(const SpectralState& state, const ModelParams& params,
                               double beta);

// Constants of the Fourier-space energy method for a given β ∈ (0,1).
//
// m1 bounds both coercivity coefficients below, m2 = m1, alpha = (1-β)/m2,
// upper is the C_β of E ≤ C_β E₀ (equal to 1 + 2β), and decay is the
// prefactor of E₀(t) ≤ decay · e^{-α ρ t} E₀(0).
struct EnergyConstants {
  double beta = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double alpha = 0.0;
  double lower = 0.0;  // 1 - β in (1-β) E₀ ≤ E
  double upper = 0.0;
  double decay = 0.0;
};

EnergyConstants energy_constants(double beta);

// The two r-dependent coefficients bounded by m1:
//   first  = (ρ + βρ²/r) / (2 r^{2θ})
//   second = 1/(2β) + ρ/(2r) + ρ r^{2θ-2}/2
// Requires r > 0.
struct CoercivityCoefficients {
  double first = 0.0;
  double second = 0.0;
};

CoercivityCoefficients coercivity_coefficients(const ModelParams& params, double beta,
                                               double r);

}  // namespace dampwave
