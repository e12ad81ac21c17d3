#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dampwave/energy.hpp"
#include "dampwave/model.hpp"
#include "dampwave/profile.hpp"
#include "dampwave/spectral.hpp"
#include "oracles.hpp"

namespace dampwave {
namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(complex a, complex b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

TEST(ModelParams, RejectsOutOfRangeParameters) {
  EXPECT_THROW(ModelParams(1.0, 3), std::invalid_argument);
  EXPECT_THROW(ModelParams(0.5, 3), std::invalid_argument);
  EXPECT_THROW(ModelParams(2.0, 0), std::invalid_argument);
  EXPECT_NO_THROW(ModelParams(1.5, 1));
}

TEST(ModelParams, CriticalRadiusSolvesTheDiscriminant) {
  const ModelParams p(2.0, 3);
  EXPECT_NEAR(p.critical_radius(), std::pow(4.0, 1.0 / 6.0), 1e-15);
  EXPECT_NEAR(p.discriminant_indicator(p.critical_radius()), 0.0, 1e-14);
}

TEST(CharacteristicRoots, UnitFrequencyIsOscillatory) {
  const auto roots = characteristic_roots(ModelParams(2.0, 3), 1.0);
  EXPECT_EQ(roots.regime, Regime::oscillatory);
  EXPECT_NEAR(roots.sigma1.real(), -0.5, 1e-15);
  EXPECT_NEAR(std::abs(roots.sigma1.imag()), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(roots.sigma2.real(), -0.5, 1e-15);
  EXPECT_NEAR(roots.sigma1.imag(), -roots.sigma2.imag(), 1e-15);
}

TEST(CharacteristicRoots, ZeroFrequencyIsADoubleZeroRoot) {
  const auto roots = characteristic_roots(ModelParams(2.0, 3), 0.0);
  EXPECT_EQ(roots.regime, Regime::critical);
  EXPECT_EQ(std::abs(roots.sigma1), 0.0);
  EXPECT_EQ(std::abs(roots.sigma2), 0.0);
}

TEST(CharacteristicRoots, CriticalRadiusGivesTheDoubleRoot) {
  const double rc = std::pow(4.0, 1.0 / 6.0);
  const auto roots = characteristic_roots(ModelParams(2.0, 3), rc);
  EXPECT_EQ(roots.regime, Regime::critical);
  // Frozen from the closed form -4^{2/3}/2.
  EXPECT_NEAR(roots.mean, -1.2599210498948731648, 1e-15);
  // rc is rounded, so the pair is split by about sqrt(eps).
  EXPECT_LE(roots.gap, 1e-7);
  EXPECT_NEAR(roots.sigma1.real(), -1.2599210498948731648, 1e-7);
  EXPECT_NEAR(roots.sigma2.real(), -1.2599210498948731648, 1e-7);

  const auto dk = testing::durand_kerner({rc * rc * rc * rc, rc * rc});
  for (const auto& z : dk) EXPECT_NEAR(z.real(), roots.sigma1.real(), 1e-6);
}

TEST(CharacteristicRoots, OverdampedAboveCriticalRadius) {
  const auto roots = characteristic_roots(ModelParams(2.0, 3), 2.0);
  EXPECT_EQ(roots.regime, Regime::overdamped);
  EXPECT_EQ(roots.sigma1.imag(), 0.0);
  EXPECT_LT(roots.sigma1.real(), 0.0);
  EXPECT_LT(roots.sigma2.real(), 0.0);
}

TEST(CharacteristicRoots, VietaRelationsOnRandomModes) {
  std::mt19937_64 rng(20150101);
  std::uniform_real_distribution<double> theta_dist(1.05, 2.0);
  std::uniform_real_distribution<double> log_r(-3.0, 1.5);
  for (int i = 0; i < 500; ++i) {
    const ModelParams p(theta_dist(rng), 3);
    const double r = std::pow(10.0, log_r(rng));
    const auto roots = characteristic_roots(p, r);
    const double d = std::pow(r, 2 * p.theta());
    EXPECT_LE(std::abs(roots.sigma1 + roots.sigma2 + d), 1e-12 * std::max(1.0, d));
    EXPECT_LE(std::abs(roots.sigma1 * roots.sigma2 - r * r), 1e-10 * std::max(r * r, d * d));
    const auto dk = testing::durand_kerner({d, r * r});
    if (std::abs(p.discriminant_indicator(r)) > 1e-3) {
      const double scale = std::abs(dk[0]) + std::abs(dk[1]);
      const double direct = std::min(std::abs(roots.sigma1 - dk[0]) + std::abs(roots.sigma2 - dk[1]),
                                     std::abs(roots.sigma1 - dk[1]) + std::abs(roots.sigma2 - dk[0]));
      EXPECT_LE(direct, 1e-8 * scale) << "theta " << p.theta() << " r " << r;
    }
  }
}

TEST(EvolveExact, InitialTimeReturnsTheData) {
  const ModelParams p(2.0, 3);
  for (double r : {0.0, 0.3, 1.0, std::pow(4.0, 1.0 / 6.0), 3.0}) {
    const auto s = evolve_exact(characteristic_roots(p, r), {0.7, -0.2}, {1.3, 0.4}, 0.0);
    EXPECT_EQ(s.u_hat, complex(0.7, -0.2));
    EXPECT_EQ(s.v_hat, complex(1.3, 0.4));
  }
}

TEST(EvolveExact, UnitFrequencyAtTimeTwo) {
  const auto s = evolve_exact(characteristic_roots(ModelParams(2.0, 3), 1.0), 1.0, 0.0, 2.0);
  // e^{-1}(cos√3 + sin√3/√3), frozen from a 50-digit evaluation.
  EXPECT_NEAR(s.u_hat.real(), 0.15057436514588761, 1e-15);
  EXPECT_NEAR(s.u_hat.imag(), 0.0, 1e-16);
  const auto ref = testing::rk4_damped_mode(1.0, 1.0, 1.0, 0.0, 2.0);
  EXPECT_LE(rel_diff(s.u_hat, ref.u), 1e-8);
  EXPECT_LE(rel_diff(s.v_hat, ref.v), 1e-8);
}

TEST(EvolveExact, ConfluentBranchAtTimeOne) {
  const ModelParams p(2.0, 3);
  const double rc = p.critical_radius();
  const auto s = evolve_exact(characteristic_roots(p, rc), 1.0, 0.0, 1.0);
  const double sigma = -1.2599210498948731648;
  EXPECT_NEAR(s.u_hat.real(), 0.64108631720847711875, 1e-13);
  EXPECT_NEAR(s.v_hat.real(), -sigma * sigma * std::exp(sigma), 1e-13);
  const auto ref = testing::rk4_damped_mode(std::pow(rc, 4), rc * rc, 1.0, 0.0, 1.0);
  EXPECT_LE(rel_diff(s.u_hat, ref.u), 1e-8);
}

TEST(EvolveExact, ContinuousAcrossTheCriticalRadius) {
  const ModelParams p(2.0, 3);
  const double rc = p.critical_radius();
  const auto at = [&](double r) {
    return evolve_exact(characteristic_roots(p, r), 1.0, 0.5, 3.0).u_hat;
  };
  const complex mid = at(rc);
  for (double eps : {1e-12, 1e-9, 1e-7}) {
    EXPECT_LE(std::abs(at(rc * (1 + eps)) - mid), 50 * eps + 1e-13);
    EXPECT_LE(std::abs(at(rc * (1 - eps)) - mid), 50 * eps + 1e-13);
  }
}

TEST(EvolveExact, AgreesWithRungeKuttaOnRandomModes) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> theta_dist(1.1, 2.0);
  std::uniform_real_distribution<double> log_r(-1.5, 0.6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p(theta_dist(rng), 2);
    const double r = std::pow(10.0, log_r(rng));
    const complex u0(unit(rng), unit(rng));
    const complex u1(unit(rng), unit(rng));
    const double t = 5.0 * (1 + unit(rng));
    const auto s = evolve_exact(characteristic_roots(p, r), u0, u1, t);
    const auto ref = testing::rk4_damped_mode(p.damping(r), r * r, u0, u1, t);
    const double scale = std::abs(ref.u) + std::abs(ref.v);
    EXPECT_LE(std::abs(s.u_hat - ref.u) + std::abs(s.v_hat - ref.v), 1e-8 * scale)
        << "theta " << p.theta() << " r " << r << " t " << t;
  }
}

TEST(EvolveExact, LongTimesStayFinite) {
  const ModelParams p(2.0, 3);
  for (double r : {1e-4, 0.5, 1.0, 1.2599, 5.0, 100.0}) {
    const auto s = evolve_exact(characteristic_roots(p, r), 1.0, 1.0, 1e9);
    EXPECT_TRUE(std::isfinite(s.u_hat.real()) && std::isfinite(s.v_hat.real())) << r;
  }
}

TEST(Rho, Values) {
  const ModelParams p(2.0, 3);
  EXPECT_DOUBLE_EQ(rho(p, 1.0), 0.5);
  EXPECT_EQ(rho(p, 0.0), 0.0);
  EXPECT_NEAR(rho(p, 10.0), 1e4 / (1 + 1e6), 1e-18);
}

TEST(EnergySnapshot, HandComputedState) {
  const ModelParams p(2.0, 3);
  SpectralState s{1.0, 1.0, 1.0, 0.0};
  const auto e = energy_snapshot(s, p, 0.1);
  EXPECT_NEAR(e.e0, 1.0, 1e-15);
  EXPECT_NEAR(e.rr, 0.05, 1e-15);
  EXPECT_NEAR(e.f, 1.05, 1e-15);
  EXPECT_NEAR(e.e, 1.075, 1e-15);
}

TEST(EnergySnapshot, ZeroState) {
  const auto e = energy_snapshot(SpectralState{0.0, 0.0, 0.7, 0.0}, ModelParams(2.0, 3), 0.1);
  EXPECT_EQ(e.e0, 0.0);
  EXPECT_EQ(e.e, 0.0);
  EXPECT_EQ(e.f, 0.0);
  EXPECT_EQ(e.rr, 0.0);
}

TEST(EnergyConstants, ClosedForms) {
  const auto c = energy_constants(0.1);
  EXPECT_NEAR(c.m1, 1 / 0.2 + 0.75, 1e-15);
  EXPECT_EQ(c.m2, c.m1);
  EXPECT_NEAR(c.alpha, 0.9 / 5.75, 1e-15);
  EXPECT_NEAR(c.lower, 0.9, 1e-15);
  EXPECT_NEAR(c.upper, 1.2, 1e-15);
  EXPECT_NEAR(c.decay, 1.2 / 0.9, 1e-15);
  EXPECT_THROW(energy_constants(0.0), std::invalid_argument);
  EXPECT_THROW(energy_constants(1.0), std::invalid_argument);
}

// Random states: R ≤ βF, (1-β)E0 ≤ E ≤ C_β E0, ρE ≤ M2 F.
TEST(EnergySnapshot, InequalitiesOnRandomStates) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> log_r(-2.0, 1.0);
  std::uniform_real_distribution<double> beta_dist(0.01, 0.99);
  std::uniform_real_distribution<double> theta_dist(1.01, 2.0);
  for (int i = 0; i < 5000; ++i) {
    const ModelParams p(theta_dist(rng), 3);
    const double beta = beta_dist(rng);
    const double r = std::pow(10.0, log_r(rng));
    const SpectralState s{{unit(rng), unit(rng)}, {unit(rng), unit(rng)}, r, 0.0};
    const auto e = energy_snapshot(s, p, beta);
    const auto c = energy_constants(beta);
    const double slack = 1e-12;
    EXPECT_LE(e.rr, beta * e.f * (1 + slack) + 1e-300);
    EXPECT_GE(e.e, c.lower * e.e0 * (1 - slack));
    EXPECT_LE(e.e, c.upper * e.e0 * (1 + slack));
    EXPECT_LE(rho(p, r) * e.e, c.m2 * e.f * (1 + slack));
    const auto cc = coercivity_coefficients(p, beta, r);
    EXPECT_LE(cc.first, c.m1 * (1 + slack));
    EXPECT_LE(cc.second, c.m1 * (1 + slack));
  }
}

// Along an exact solution dE/dt = R - F.
TEST(EnergySnapshot, LyapunovDerivativeMatchesDefectMinusDissipation) {
  const ModelParams p(2.0, 3);
  const double beta = 0.1;
  for (double r : {0.2, 0.8, 1.3, 3.0}) {
    const auto roots = characteristic_roots(p, r);
    for (double t : {0.5, 2.0, 7.0}) {
      const double h = 1e-5;
      const auto e_at = [&](double tt) {
        return energy_snapshot(evolve_exact(roots, 1.0, {0.3, -0.4}, tt), p, beta);
      };
      const double derivative = (e_at(t + h).e - e_at(t - h).e) / (2 * h);
      const auto now = e_at(t);
      EXPECT_NEAR(derivative, now.rr - now.f, 1e-6 * (std::abs(now.f) + 1e-12))
          << "r " << r << " t " << t;
    }
  }
}

TEST(ProfileHat, SmallFrequencyLimit) {
  const ModelParams p(2.0, 3);
  const ProfileParams m{0.3, 1.7};
  for (double t : {0.0, 1.0, 25.0}) {
    EXPECT_NEAR(profile_hat(p, t, 0.0, m), 1.7 * t + 0.3, 1e-12);
    EXPECT_NEAR(profile_hat(p, t, 1e-9, m), 1.7 * t + 0.3, 1e-9 * (1 + t));
  }
}

TEST(ProfileHat, InitialTimeIsTheMass) {
  const ModelParams p(2.0, 3);
  for (double r : {0.01, 0.5, 2.0}) EXPECT_DOUBLE_EQ(profile_hat(p, 0.0, r, {0.8, 5.0}), 0.8);
}

TEST(ProfileHat, SineZero) {
  EXPECT_NEAR(profile_hat(ModelParams(2.0, 3), kPi, 1.0, {0.0, 1.0}), 0.0, 1e-15);
}

TEST(ProfileHat, RequiresThetaTwo) {
  EXPECT_THROW(profile_hat(ModelParams(1.5, 3), 1.0, 0.5, {1.0, 1.0}), std::invalid_argument);
}

TEST(RemainderTerms, VanishAtInitialTime) {
  const ModelParams p(2.0, 3);
  const DatumValues v{0.9, 1.1};
  const ProfileParams m{1.0, 1.2};
  const auto k = remainder_terms(p, 0.0, 0.3, v, m);
  EXPECT_EQ(std::abs(k.k1), 0.0);
  EXPECT_EQ(k.env4, 0.0);
  EXPECT_EQ(k.env5, 0.0);
  EXPECT_EQ(k.env6, 0.0);
}

TEST(RemainderTerms, ConstantDataHaveNoRemainder) {
  const ModelParams p(2.0, 3);
  const auto k = remainder_terms(p, 3.0, 0.25, DatumValues{0.0, 0.0}, ProfileParams{0.0, 0.0});
  EXPECT_EQ(std::abs(k.k1) + std::abs(k.k2) + std::abs(k.k3), 0.0);
  EXPECT_EQ(k.envelope_sum({0.0, 0.0}), 0.0);
  EXPECT_EQ(k.mean_value_part, 0.0);
}

TEST(RemainderTerms, RejectsInvalidArguments) {
  const ModelParams p(2.0, 3);
  EXPECT_THROW(remainder_terms(p, 1.0, 0.0, {}, {}), std::invalid_argument);
  EXPECT_THROW(remainder_terms(p, 1.0, 0.6, {}, {}, 0.5), std::invalid_argument);
  EXPECT_THROW(remainder_terms(p, -1.0, 0.1, {}, {}), std::invalid_argument);
  EXPECT_THROW(remainder_terms(ModelParams(1.5, 3), 1.0, 0.1, {}, {}), std::invalid_argument);
  EXPECT_THROW(remainder_terms(p, 1.0, 0.1, {}, {}, 1.5), std::invalid_argument);
}

// Random smooth data values with |û_j - P_j| ≤ L r: the residual obeys the envelope
// and the splitting reproduces û.
TEST(RemainderTerms, SplittingAndEnvelopeOnRandomSamples) {
  const ModelParams p(2.0, 3);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> log_t(0.0, 6.0);
  std::uniform_real_distribution<double> log_r(-4.0, std::log10(0.5));
  for (int i = 0; i < 3000; ++i) {
    const double t = std::pow(10.0, log_t(rng));
    const double r = std::pow(10.0, log_r(rng));
    const ProfileParams m{unit(rng), unit(rng)};
    // Gaussian-like A parts: A_j(r) = P_j (e^{-c r²} - 1).
    const double c0 = 1 + unit(rng);
    const double c1 = 1 + unit(rng);
    DatumValues v;
    v.a0 = m.mass0 * std::expm1(-c0 * r * r);
    v.a1 = m.mass1 * std::expm1(-c1 * r * r);
    v.u0_hat = m.mass0 + v.a0;
    v.u1_hat = m.mass1 + v.a1;
    const auto k = remainder_terms(p, t, r, v, m);
    const auto u = evolve_exact(characteristic_roots(p, r), v.u0_hat, v.u1_hat, t).u_hat;
    const double prof = profile_hat(p, t, r, m);
    const double scale = std::abs(u) + std::abs(prof) + std::abs(k.k1) + std::abs(k.k2) +
                         std::abs(k.k3) + 1e-300;
    const complex residual = u - prof - k.k1 - k.k2 - k.k3;
    EXPECT_LE(std::abs(residual), k.envelope_sum(m) + 1e-12 * scale) << "t " << t << " r " << r;
    // The direct difference inherits the phase rounding of sin(t r).
    const double phase_eps = 256 * std::numeric_limits<double>::epsilon() * (1 + t * r);
    EXPECT_LE(std::abs(residual - k.mean_value_part), phase_eps * scale)
        << "t " << t << " r " << r;
  }
}

}  // namespace
}  // namespace dampwave
