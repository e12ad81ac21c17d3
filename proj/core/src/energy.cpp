#include "dampwave/energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace dampwave {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0, 1)");
}

}  // namespace

EnergySnapshot energy_snapshot(const SpectralState& state, const ModelParams& params,
                               double beta) {
  require_beta(beta);
  const double r = state.r;
  const double r2 = r * r;
  const double damp = params.damping(r);
  const double key = rho(params, r);
  const double u2 = std::norm(state.u_hat);
  const double v2 = std::norm(state.v_hat);
  const double cross = (state.v_hat * std::conj(state.u_hat)).real();

  EnergySnapshot s;
  s.beta = beta;
  s.e0 = 0.5 * v2 + 0.5 * r2 * u2;
  s.e = s.e0 + beta * key * cross + 0.5 * beta * key * damp * u2;
  s.f = damp * v2 + beta * key * r2 * u2;
  s.rr = beta * key * v2;
  return s;
}

EnergyConstants energy_constants(double beta) {
  require_beta(beta);
  EnergyConstants c;
  c.beta = beta;
  c.m1 = std::max(0.5 + 0.25 * beta, 0.5 / beta + 0.75);
  c.m2 = c.m1;
  c.alpha = (1.0 - beta) / c.m2;
  c.lower = 1.0 - beta;
  c.upper = 1.0 + 2.0 * beta;
  c.decay = c.upper / c.lower;
  return c;
}

CoercivityCoefficients coercivity_coefficients(const ModelParams& params, double beta,
                                               double r) {
  require_beta(beta);
  if (!(r > 0.0))
    throw std::invalid_argument("coercivity_coefficients: r must be > 0");
  const double key = rho(params, r);
  const double damp = params.damping(r);
  CoercivityCoefficients c;
  c.first = (key + beta * key * key / r) / (2.0 * damp);
  c.second = 0.5 / beta + key / (2.0 * r) +
             0.5 * key * std::pow(r, 2.0 * params.theta() - 2.0);
  return c;
}

}  // namespace dampwave
