#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dampwave/data.hpp"
#include "dampwave/energy.hpp"
#include "dampwave/model.hpp"
#include "dampwave/quadrature.hpp"

namespace dampwave::harness {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when the inputs violate a hypothesis of the statement being checked.
// The message names the failed condition.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<double> logspace(double lo, double hi, std::size_t count);

// Log-spaced grid with the given density; both endpoints included.
std::vector<double> decade_grid(double t_min, double t_max, double points_per_decade);

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

enum class CheckKind {
  fit_only,   // slope and stderr, no claim
  rate,       // |slope - predicted| ≤ tolerance
  two_sided,  // max/min of value / gauge(t) ≤ bound
  upper,      // value / gauge(t) does not grow by more than bound, slope ≤ predicted + tolerance
};

const char* to_string(CheckKind kind) noexcept;

struct DecayReport {
  std::string name;
  std::vector<Sample> samples;
  double fitted_slope = kNaN;
  double slope_stderr = kNaN;
  double predicted_slope = kNaN;
  // max/min over samples of value / gauge(t); the gauge is t^{predicted}
  // unless stated otherwise in gauge_label.
  double ratio_spread = kNaN;
  // max over i ≤ j of ratio_j / ratio_i (growth of the normalized value).
  double growth = kNaN;
  double tolerance = kNaN;
  double bound = kNaN;
  std::string gauge_label;
  CheckKind kind = CheckKind::fit_only;
  bool pass = false;
  std::string note;
};

// Least-squares fit of log value against log t.
// Needs at least 8 samples with t > 0; a nonpositive value fails the report
// with the offending t in the note.
DecayReport fit_decay_rate(std::span<const Sample> samples);

using Gauge = std::function<double(double)>;

DecayReport check_rate(std::span<const Sample> samples, double predicted, double tolerance,
                       double spread_bound = kInf);
DecayReport check_two_sided(std::span<const Sample> samples, Gauge gauge, std::string gauge_label,
                            double predicted, double bound);
DecayReport check_upper(std::span<const Sample> samples, Gauge gauge, std::string gauge_label,
                        double predicted, double growth_bound, double slope_tolerance);

// Spread of value / log(t)^power, for targets that are not power laws.
DecayReport check_log_ratio(std::span<const Sample> samples, double power, double bound);

// ---------------------------------------------------------------------------
// Pointwise inequalities

struct InequalityRow {
  double t = 0.0;
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 0.0;  // magnitude used to make the violation relative

  double violation() const;  // (lhs - rhs) / scale
};

inline constexpr double kRelativeSlack = 1e-12;

struct InequalityReport {
  std::string name;
  std::string grid;
  std::vector<InequalityRow> rows;  // worst row per grid cell
  std::size_t evaluated = 0;
  double max_violation = -kInf;
  double worst_t = kNaN;
  double worst_r = kNaN;
  bool pass = false;

  void record(const InequalityRow& row);  // keeps the worst-so-far summary
  void finish();                          // sets pass
};

struct PointwiseGrid {
  std::vector<double> r;
  std::size_t states = 200;
  std::uint64_t seed = 0x5eed2015u;
};

PointwiseGrid default_pointwise_grid();  // 60 log points on [1e-2, 10], 200 states

// R ≤ βF, the two coercivity coefficients ≤ M₁, ρE ≤ M₂F, (1-β)E₀ ≤ E and
// E ≤ C_β E₀ on random complex states.
// Report names: lemma21, lemma22_first, lemma22_second, lemma23, sandwich_lower, sandwich_upper.
std::vector<InequalityReport> check_pointwise_inequalities(const ModelParams& params, double beta,
                                                     const PointwiseGrid& grid);

// E₀(t) ≤ C e^{-αρ t} E₀(0) with the constructive (C, α); the states at each
// r are (û₀, û₁), (û₀, 0) and (0, û₁) built from the two data.
InequalityReport check_energy_decay(const ModelParams& params, double beta,
                               std::span<const double> r_grid, std::span<const double> t_grid,
                               const data::InitialDatum& d0, const data::InitialDatum& d1);

struct ContinuityCheck {
  data::ContinuityConstants constants;
  double l_oracle = kNaN;  // independent dense-grid maximum
  InequalityReport bound;  // |û(r) - P| ≤ L r ‖u‖_{1,1}
  bool pass = false;
};

ContinuityCheck check_continuity_modulus(std::span<const data::InitialDatum> data,
                            std::span<const double> r_grid);

// |û - profile - K₁ - K₂ - K₃| ≤ |P₁|env4 + |P₀|env5 + env6 on the grid.
InequalityReport check_remainder_decomposition(const ModelParams& params,
                                               const data::InitialDatum& d0,
                                               const data::InitialDatum& d1,
                                               std::span<const double> t_grid,
                                               std::span<const double> r_grid,
                                               double delta0 = kDefaultDelta0);

// ---------------------------------------------------------------------------
// Quadrature-based checks

struct RunOptions {
  double quad_tolerance = 1e-8;
  int points_per_panel = 16;
  unsigned threads = 1;
};

// Calls body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// ∫_{|ξ|≤1} e^{-α t r^{2θ}} r^{±k} dξ; negative_power selects r^{-k}.
double unit_ball_moment(double theta, double alpha, int k, int n, double t, bool negative_power,
                        const RunOptions& opts = {});

DecayReport check_ball_moment(double theta, double alpha, int k, int n,
                              std::span<const double> t_grid, const RunOptions& opts = {},
                              double slope_tolerance = 0.03, double spread_bound = 3.0);
DecayReport check_inverse_ball_moment(double theta, double eta, int k, int n,
                              std::span<const double> t_grid, const RunOptions& opts = {},
                              double slope_tolerance = 0.03, double spread_bound = 3.0);

struct HighFreqSup {
  double closed_form = 0.0;
  double numeric_max = 0.0;
  double chain_bound = 0.0;  // e^{α/2} (2k/α)^k e^{-k} (1+t)^{-k}
  double argmax_r = 1.0;
};

// sup_{r≥1} e^{-αt / (2 r^{2θ-2})} r^{-2ℓ}.
HighFreqSup high_freq_sup(double theta, double ell, double alpha, double t);

struct HighFreqCheck {
  DecayReport report;
  std::vector<HighFreqSup> values;
  double max_disagreement = 0.0;
  bool chain_ok = true;
};

HighFreqCheck check_high_freq_sup(double theta, double ell, double alpha,
                                  std::span<const double> t_grid, double slope_tolerance = 0.02);

enum class DecayTarget { energy, l2, profile };  // thm11, thm12, thm13

const char* to_string(DecayTarget which) noexcept;

struct DecayRun {
  DecayReport report;
  std::vector<double> rhs;           // assembled right-hand side per sample
  std::vector<double> errors;        // quadrature error estimate per sample
  double fitted_constant = kNaN;     // max value / rhs
  double rhs_spread = kNaN;          // max/min of value / rhs
  // Profile check only: low/high split at δ₀ and the low-frequency report.
  std::vector<double> low;
  std::vector<double> high;
  double split_defect = 0.0;  // max |value - low - high| / (errors + tol·value)
  DecayReport low_frequency;
  // Rate at which the high-frequency term decays and whether it beats the
  // leading term.
  double remainder_exponent = kNaN;
  bool remainder_dominated = true;
};

struct DecayOptions {
  double slope_tolerance = 0.05;
  double spread_bound = 3.0;
  double delta0 = kDefaultDelta0;
  double beta = kDefaultBeta;
};

// Throws HypothesisError when the assumptions of the estimate fail.
DecayRun run_decay_check(DecayTarget which, const ModelParams& params,
                             const data::InitialDatum& d0, const data::InitialDatum& d1,
                             double ell, std::span<const double> t_grid,
                             const DecayOptions& topts = {}, const RunOptions& opts = {});

struct TwoSidedRun {
  DecayReport report;
  double c1 = kNaN;  // min ‖u‖ / (|P₁| g)
  double c2 = kNaN;  // max ‖u‖ / (I₀ g)
  double i0 = kNaN;
};

TwoSidedRun two_sided_l2(const ModelParams& params, const data::InitialDatum& d0,
                         const data::InitialDatum& d1, double ell,
                         std::span<const double> t_grid, double spread_bound = 4.0,
                         const RunOptions& opts = {});

// Spectral norms of the exact solution at time t.
enum class Density {
  l2,             // |û|²
  energy,         // |û_t|² + r²|û|²
  profile_error,  // |û - profile|², θ = 2
};

struct NormRange {
  double lower = 0.0;
  double upper = kInf;
};

// ∫ density dξ over lower ≤ |ξ| ≤ upper (no (2π)^{-n} factor).
quad::QuadratureResult spectral_integral(Density density, const ModelParams& params,
                                         const data::InitialDatum& d0,
                                         const data::InitialDatum& d1, double t,
                                         NormRange range = {}, const RunOptions& opts = {});

// ---------------------------------------------------------------------------
// Optimality integrals

// ∫_{R^n} e^{-t r⁴} sin²(t r)/r² dξ
quad::QuadratureResult sin2_integral(int n, double t, const RunOptions& opts = {});
// ∫_{R^n} e^{-t r⁴} cos²(t r) dξ
quad::QuadratureResult cos2_integral(int n, double t, const RunOptions& opts = {});

double a0_constant(int n);  // ∫₀^∞ e^{-x⁴} x^{n-3} dx, n ≥ 3
double b0_constant(int n);  // ∫₀^∞ e^{-x⁴} x^{n-1} dx
// F_n(t) = ∫₀^∞ e^{-x⁴} x^{n-3} cos(2 t^{3/4} x) dx, n ≥ 3
double riemann_lebesgue_f(int n, double t, const RunOptions& opts = {});
// G_n(t) = ∫₀^∞ e^{-x⁴} x^{n-1} cos(2 t^{3/4} x) dx
double riemann_lebesgue_g(int n, double t, const RunOptions& opts = {});

struct OptimalityRow {
  double t = 0.0;
  double sin2 = 0.0;
  double cos2 = 0.0;
  double f_n = kNaN;
  double g_n = 0.0;
  double sin2_identity_defect = kNaN;
  double cos2_identity_defect = 0.0;
};

struct OptimalitySuite {
  int n = 3;
  std::vector<OptimalityRow> rows;
  std::vector<DecayReport> reports;
  double a0 = kNaN;
  double b0 = kNaN;
  bool riemann_lebesgue_ok = true;  // |F_n| ≤ A₀/2 on t ≥ rl_threshold
  double rl_threshold = 1e3;
  double max_identity_defect = 0.0;
  bool pass = false;
};

// n ∈ [1, 5]. For n ≥ 3: sin² slope -(n-2)/4, cos² slope -n/4, identities
// with F_n, G_n and |F_n| ≤ A₀/2. For n = 1: sin² slope +1 and value/t spread.
// For n = 2: sin² value/log t spread.
OptimalitySuite optimality_suite(int n, std::span<const double> t_grid,
                                 const RunOptions& opts = {});

}  // namespace dampwave::harness
