// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dampwave/cli/app.hpp"
#include "dampwave/data.hpp"
#include "dampwave/harness.hpp"
#include "dampwave/spectral.hpp"
#include "oracles.hpp"

namespace {

using namespace dampwave;
using namespace dampwave::harness;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kGridPoints = 20;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

int failures = 0;

void criterion(int index, const char* title, double time_limit,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(seconds < time_limit, "runtime " + num(seconds) + " s < " + num(time_limit) + " s");
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", index, title, v.detail.c_str());
  std::fflush(stdout);
}

void evolution_oracle(Verdict& v) {
  const ModelParams p(2.0, 3);
  const double rc = std::pow(4.0, 1.0 / 6.0);
  double worst = 0.0;
  for (double r : {0.1, 1.0, rc * (1 - 1e-4), rc, rc * (1 + 1e-4), 2.0, 10.0}) {
    const complex u0(1.0, 0.0);
    const complex u1(0.5, 0.0);
    const auto exact = evolve_exact(characteristic_roots(p, r), u0, u1, 10.0);
    const auto ref = dampwave::testing::rk4_damped_mode(p.damping(r), r * r, u0, u1, 10.0);
    const double rel = (std::abs(exact.u_hat - ref.u) + std::abs(exact.v_hat - ref.v)) /
                       (std::abs(ref.u) + std::abs(ref.v));
    worst = std::max(worst, rel);
  }
  v.require(worst <= 1e-8, "max relative disagreement " + num(worst) + " <= 1e-8");
}

void pointwise_suite(Verdict& v) {
  const auto reports = check_pointwise_inequalities(ModelParams(2.0, 3), 0.1, default_pointwise_grid());
  for (const auto& r : reports)
    v.require(r.pass, r.name + " max violation " + num(r.max_violation));
}

void energy_decay(Verdict& v) {
  const auto d0 = data::make_gaussian(0.5, 1.0, 3);
  const auto d1 = data::make_gaussian(0.5, 1.0, 3);
  std::vector<double> t;
  for (int i = 0; i < 50; ++i) t.push_back(100.0 * i / 49);
  const auto report = check_energy_decay(ModelParams(2.0, 3), 0.1, logspace(1e-2, 10.0, 50), t, d0, d1);
  v.require(report.pass, "max violation " + num(report.max_violation) + " over " +
                             std::to_string(report.evaluated) + " cells");
}

void moments_and_high_freq(Verdict& v) {
  for (int k : {0, 2}) {
    const auto r = check_ball_moment(2.0, 1.0, k, 3, logspace(1.0, 1e8, kGridPoints), {}, 0.03);
    v.require(r.pass, "k=" + std::to_string(k) + " slope " + num(r.fitted_slope) + " vs " +
                          num(r.predicted_slope) + " +- 0.03");
  }
  for (double ell : {1.0, 2.0}) {
    const auto c = check_high_freq_sup(2.0, ell, 1.0, logspace(1e2, 1e8, kGridPoints), 0.02);
    v.require(c.max_disagreement <= 1e-6,
              "ell=" + num(ell) + " closed/grid " + num(c.max_disagreement) + " <= 1e-6");
    v.require(c.report.pass, "ell=" + num(ell) + " slope " + num(c.report.fitted_slope) +
                                 " vs " + num(-ell) + " +- 0.02");
  }
}

void l2_and_energy_rates(Verdict& v) {
  const ModelParams p(2.0, 3);
  const auto z = data::make_zero(3);
  const auto g = data::make_gaussian(0.5, 1.0, 3);
  const auto t = logspace(1e2, 1e6, kGridPoints);
  for (auto [which, tol] : {std::pair{DecayTarget::l2, 0.05}, std::pair{DecayTarget::energy, 0.08}}) {
    const auto start = std::chrono::steady_clock::now();
    DecayOptions o;
    o.slope_tolerance = tol;
    const auto run = run_decay_check(which, p, z, g, 2.0, t, o);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(run.report.pass, std::string(to_string(which)) + " slope " +
                                   num(run.report.fitted_slope) + " vs " +
                                   num(run.report.predicted_slope) + " +- " + num(tol));
    v.require(s < 60.0, std::string(to_string(which)) + " " + num(s) + " s < 60 s");
  }
}

void profile_error(Verdict& v) {
  const ModelParams p(2.0, 3);
  const auto z = data::make_zero(3);
  const auto g = data::make_gaussian(0.5, 1.0, 3);
  const auto t = logspace(1e3, 1e7, kGridPoints);
  DecayOptions o;
  o.spread_bound = 3.0;
  const auto first = run_decay_check(DecayTarget::profile, p, z, g, 2.0, t, o);
  v.require(first.report.pass && first.report.growth <= 3.0,
            "u1 Gaussian: error*t^{3/4} growth " + num(first.report.growth) +
                " <= 3 (ratio_spread " + num(first.report.ratio_spread) + ", slope " +
                num(first.report.fitted_slope) + ")");
  v.require(first.low_frequency.pass, "low-frequency part bounded, growth " +
                                          num(first.low_frequency.growth));
  const auto swapped = run_decay_check(DecayTarget::profile, p, g, z, 2.0, t, o);
  v.require(swapped.report.pass && swapped.report.growth <= 3.0,
            "u0 Gaussian: error*t^{5/4} growth " + num(swapped.report.growth) +
                " <= 3 (ratio_spread " + num(swapped.report.ratio_spread) + ", slope " +
                num(swapped.report.fitted_slope) + ")");
  const auto residual = check_remainder_decomposition(p, data::make_gaussian(0.5, 1.0, 3), g,
                                                      logspace(1.0, 1e6, 25), logspace(1e-5, 0.5, 60));
  v.require(residual.pass, "decomposition residual <= envelope, max violation " +
                               num(residual.max_violation));
}

void continuity(Verdict& v) {
  const std::vector<data::InitialDatum> d{data::make_gaussian(0.5, 1.0, 3),
                                          data::make_gaussian(2.0, 1.0, 1)};
  const auto result = check_continuity_modulus(d, logspace(1e-6, 100.0, 400));
  v.require(std::abs(result.constants.L - result.l_oracle) <= 1e-6,
            "L " + num(result.constants.L) + " vs oracle " + num(result.l_oracle));
  v.require(std::abs(result.constants.L - 0.7246) < 5e-5, "L ~ 0.7246");
  v.require(result.constants.M == 1.0, "M = 1");
  v.require(result.bound.pass, "|u_hat - P| <= L r ||u||_{1,1}, max violation " +
                                   num(result.bound.max_violation));
}

void optimality(Verdict& v) {
  const auto n3 = optimality_suite(3, logspace(1e3, 1e7, kGridPoints));
  for (const auto& r : n3.reports)
    v.require(r.pass, "n=3 " + r.name + " slope " + num(r.fitted_slope) + " vs " +
                          num(r.predicted_slope));
  v.require(n3.riemann_lebesgue_ok, "|F_3| <= A0/2 for t >= 1e3");
  v.require(std::abs(n3.a0 - 0.90640247705547707798) < 1e-12, "A0 = Gamma(5/4) " + num(n3.a0));
  const auto n1 = optimality_suite(1, logspace(1e3, 1e7, kGridPoints));
  v.require(n1.reports.front().pass, "n=1 sin2 slope " + num(n1.reports.front().fitted_slope) +
                                         " vs 1 +- 0.05, spread " +
                                         num(n1.reports.front().ratio_spread));
  const auto n2 = optimality_suite(2, logspace(1e3, 1e9, kGridPoints));
  v.require(n2.reports.front().pass && n2.reports.front().ratio_spread <= 2.0,
            "n=2 sin2/log t spread " + num(n2.reports.front().ratio_spread) + " <= 2");
}

void two_sided(Verdict& v) {
  const auto t = logspace(1e2, 1e6, kGridPoints);
  for (int n : {3, 2, 1}) {
    const auto run = two_sided_l2(ModelParams(2.0, n), data::make_zero(n),
                                  data::make_gaussian(0.5, 1.0, n), 2.0, t, 4.0);
    v.require(run.report.pass && run.report.ratio_spread <= 4.0,
              run.report.name + " spread " + num(run.report.ratio_spread) + " <= 4");
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void infrastructure(Verdict& v) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto g = data::make_gaussian(0.5, 1.3, n);
    const double spectral = spectral_integral(Density::l2, ModelParams(2.0, n), g, data::make_zero(n), 0.0).value *
                            std::pow(2 * kPi, -n);
    const double physical = 1.3 * 1.3 * std::pow(kPi, 0.5 * n);
    worst = std::max(worst, std::abs(spectral - physical) / physical);
  }
  v.require(worst <= 1e-8, "Plancherel relative defect " + num(worst) + " <= 1e-8");

  RunOptions coarse;
  RunOptions fine;
  fine.points_per_panel = 32;
  fine.quad_tolerance = coarse.quad_tolerance / 100;
  const ModelParams p(2.0, 3);
  const auto z = data::make_zero(3);
  const auto g = data::make_gaussian(0.5, 1.0, 3);
  std::size_t shifted = 0;
  std::size_t values = 0;
  const auto compare = [&](const quad::QuadratureResult& a, const quad::QuadratureResult& b) {
    ++values;
    if (!(std::abs(a.value - b.value) < a.error)) ++shifted;
  };
  for (double t : {1e2, 1e4, 1e6}) {
    for (auto d : {Density::l2, Density::energy, Density::profile_error})
      compare(spectral_integral(d, p, z, g, t, {}, coarse), spectral_integral(d, p, z, g, t, {}, fine));
    compare(sin2_integral(3, t, coarse), sin2_integral(3, t, fine));
    compare(cos2_integral(3, t, coarse), cos2_integral(3, t, fine));
    compare(sin2_integral(1, t, coarse), sin2_integral(1, t, fine));
  }
  v.require(shifted == 0, "self-convergence: " + std::to_string(shifted) + " of " +
                              std::to_string(values) + " values moved by more than their error");

  const fs::path root = fs::temp_directory_path() / ("dampwave-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream(root / "config.json")
        << R"({"model": {"theta": 2, "n": 3}, "datum1": {"family": "gaussian", "a": 0.5, "amplitude": 1},
  "t_grid": {"t_min": 100, "t_max": 1e5, "points_per_decade": 4},
  "checks": ["lemma21", "lemma24", "formula217", "highfreqsup", "thm12", "thm13", "lemma31"]})";
  }
  std::ostringstream sink;
  bool same = true;
  std::size_t files = 0;
  const auto run = [&](const std::string& dir) {
    std::string a0 = "dampwave", a1 = "run", a2 = (root / "config.json").string(),
                a3 = "--output-dir", a4 = (root / dir).string();
    char* argv[] = {a0.data(), a1.data(), a2.data(), a3.data(), a4.data()};
    return cli::main_entry(5, argv, sink, sink);
  };
  const int s1 = run("a");
  const int s2 = run("b");
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    same = same && slurp(entry.path()) == slurp(root / "b" / entry.path().filename());
  }
  fs::remove_all(root);
  v.require(s1 == 0 && s2 == 0 && same && files > 0,
            "CLI determinism: " + std::to_string(files) + " CSVs byte-identical across two runs");
}

}  // namespace

int main() {
  criterion(1, "evolution vs RK4 oracle", 1.0, evolution_oracle);
  criterion(2, "pointwise energy inequalities", 1.0, pointwise_suite);
  criterion(3, "exponential energy decay per frequency", 5.0, energy_decay);
  criterion(4, "ball moments and high-frequency supremum", 10.0, moments_and_high_freq);
  criterion(5, "L2 and total-energy decay rates", 120.0, l2_and_energy_rates);
  criterion(6, "distance to the diffusion-wave profile", 120.0, profile_error);
  criterion(7, "continuity constants", 1.0, continuity);
  criterion(8, "optimality integrals", 60.0, optimality);
  criterion(9, "two-sided L2 bounds", 120.0, two_sided);
  criterion(10, "infrastructure", 120.0, infrastructure);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
