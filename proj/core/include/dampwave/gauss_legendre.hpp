#pragma once

#include <vector>

namespace dampwave::quad {

// p-point Gauss–Legendre rule on [-1, 1]; exact for polynomials of degree 2p-1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int points() const noexcept { return static_cast<int>(nodes.size()); }
};

// Computed by Newton iteration on P_p; rules are cached per p and the
// returned reference stays valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(int points);

}  // namespace dampwave::quad
