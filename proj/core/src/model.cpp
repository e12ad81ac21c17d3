#include "dampwave/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dampwave {

ModelParams::ModelParams(double theta, int n) : theta_(theta), n_(n) {
  if (!(theta > 1.0) || !std::isfinite(theta))
    throw std::invalid_argument("ModelParams: theta must be a finite value > 1, got " +
                                std::to_string(theta));
  if (n < 1)
    throw std::invalid_argument("ModelParams: dimension n must be >= 1, got " +
                                std::to_string(n));
}

double ModelParams::damping(double r) const { return std::pow(r, 2.0 * theta_); }

double ModelParams::discriminant_indicator(double r) const {
  return std::pow(r, 4.0 * theta_ - 2.0) - 4.0;
}

double ModelParams::critical_radius() const {
  return std::pow(4.0, 1.0 / (4.0 * theta_ - 2.0));
}

}  // namespace dampwave
