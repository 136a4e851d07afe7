// One pass/fail line per criterion: `acceptance N` exits 0 on PASS.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dzeros/expansion.hpp"
#include "dzeros/expected_zeros.hpp"
#include "dzeros/gamma.hpp"
#include "dzeros/general_dirichlet.hpp"
#include "dzeros/simulator.hpp"
#include "dzeros/zeta.hpp"

using namespace dzeros;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvTwoPi = 0.5 / kPi;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Verdict c2_identity() {
  const auto start = std::chrono::steady_clock::now();
  const ExpansionCoefficients coeffs = default_expansion_coefficients(6);
  const StieltjesPolynomial g0 = StieltjesPolynomial::variable(0);
  const StieltjesPolynomial g1 = StieltjesPolynomial::variable(1);
  const StieltjesPolynomial skeleton = (StieltjesPolynomial(2) * g1 + g0 * g0) * StieltjesPolynomial(Rational(1, 2));
  const bool symbolic = coeffs.symbolic[2] == skeleton;
  const StieltjesTable& g = cached_stieltjes();
  const double closed = (2.0 * g[1] + g[0] * g[0]) / (2.0 * kPi);
  const double gap = std::abs(coeffs.c[2] - closed);
  const double elapsed = seconds_since(start);
  return {symbolic && gap <= 1e-10 && elapsed < 1.0,
          fmt("symbolic=%s c2=%.16g closed=%.16g gap=%.2e (tol 1e-10) runtime=%.3fs (limit 1s)",
              symbolic ? "match" : "MISMATCH", coeffs.c[2], closed, gap, elapsed)};
}

Verdict leading_term() {
  std::vector<double> ratios;
  for (double t : {1e-4, 1e-6, 1e-8}) {
    ratios.push_back(expected_zero_count({0.5 + t}).value / std::log(1.0 / t));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    monotone = monotone && std::abs(ratios[i] - kInvTwoPi) < std::abs(ratios[i - 1] - kInvTwoPi);
  }
  const double relative = std::abs(ratios.back() / kInvTwoPi - 1.0);
  return {monotone && relative <= 0.01,
          fmt("ratios=%.6f,%.6f,%.6f target=%.7f monotone=%s last_rel_gap=%.4f (tol 0.01)", ratios[0], ratios[1],
              ratios[2], kInvTwoPi, monotone ? "yes" : "no", relative)};
}

Verdict expansion_vs_quadrature() {
  const C0Calibration cal = calibrate_c0(1e-8);
  const ExpansionCoefficients& coeffs = calibrated_expansion_coefficients();
  double worst = 0.0;
  for (double t = 1e-3; t >= 1e-8 * 0.99; t /= 10.0) {
    const double T = 0.5 + t;
    worst = std::max(worst, std::abs(expected_zero_count_expansion(T, coeffs) - expected_zero_count({T}).value));
  }
  return {worst < 1e-6 && cal.spread <= 1e-8,
          fmt("max|expansion-quadrature|=%.2e (tol 1e-6) c0=%.13f anchor_spread=%.2e (tol 1e-8)", worst, cal.c0,
              cal.spread)};
}

Verdict monte_carlo_agreement() {
  SimulationConfig config;
  config.interval = {0.6, 1.0};
  config.trials = 10'000;
  config.seed = 20240611;
  const SimulationSummary summary = simulate(config);
  const double quadrature = expected_zero_count(config.interval).value;
  const double z = (summary.mean - quadrature) / summary.standard_error;
  return {std::abs(z) <= 3.0 && summary.suspect_rate < 0.01,
          fmt("mean=%.5f se=%.5f quadrature=%.6f z=%.2f (|z|<=3) suspect_rate=%.4f (<0.01) N=%zu", summary.mean,
              summary.standard_error, quadrature, z, summary.suspect_rate, summary.truncation)};
}

Verdict orthant_correlation() {
  bool pass = true;
  std::string detail;
  for (double rho : {-0.5, 0.5, 0.9}) {
    const double exact = (2.0 / kPi) * std::atan(rho / std::sqrt(1.0 - rho * rho));
    const double closed = orthant_indicator_correlation(rho);
    const Estimate mc = monte_carlo_orthant_correlation(rho, 1'000'000, 7);
    const double z = (mc.value - closed) / mc.standard_error;
    pass = pass && std::abs(closed - exact) < 1e-15 && std::abs(z) <= 3.0;
    detail += fmt("rho=%g closed=%.6f mc=%.6f z=%.2f; ", rho, closed, mc.value, z);
  }
  const double half = orthant_indicator_correlation(0.5);
  pass = pass && std::abs(half - 1.0 / 3.0) < 1e-15;
  return {pass, detail + fmt("rho=0.5 exact gap=%.1e (|z|<=3, tol 1e-15)", std::abs(half - 1.0 / 3.0))};
}

Verdict correlation_decay() {
  double worst = 0.0;
  int worst_k = 0;
  int worst_l = 0;
  for (int k = 1; k <= 25; ++k) {
    for (int l = 1; l <= 25; ++l) {
      const double corr = std::abs(series_correlation(0.5 + std::ldexp(1.0, -k), 0.5 + std::ldexp(1.0, -l)));
      const double scaled = corr * std::pow(std::sqrt(2.0), std::abs(k - l));
      if (scaled > worst) {
        worst = scaled;
        worst_k = k;
        worst_l = l;
      }
    }
  }
  return {worst <= 3.0, fmt("max |corr| * sqrt2^|k-l| = %.4f at (k,l)=(%d,%d) (bound 3)", worst, worst_k, worst_l)};
}

Verdict tau_factor() {
  const FrequencySet tau = FrequencySet::tau_weighted();
  double worst = 0.0;
  for (double sigma : {0.51, 0.6, 1.0, 2.0}) {
    worst = std::max(worst, std::abs(kac_integrand_alpha(sigma, tau) / kac_integrand(sigma) - std::sqrt(2.0)));
  }
  return {worst <= 1e-9, fmt("max|ratio - sqrt2|=%.2e (tol 1e-9)", worst)};
}

Verdict supercritical_slopes() {
  bool pass = true;
  std::string detail;
  const std::vector<std::pair<double, FrequencySet>> sets{{0.0, FrequencySet::integers()},
                                                         {1.0, FrequencySet::tau_weighted()},
                                                         {3.0, FrequencySet::divisor_weighted(4)}};
  for (const auto& [alpha, set] : sets) {
    std::vector<double> x;
    std::vector<double> y;
    for (double t = 1e-4; t >= 1e-8 * 0.99; t /= 10.0) {
      x.push_back(std::log(1.0 / t));
      y.push_back(expected_zero_count_alpha({0.5 + t}, set, 1e-10).value);
    }
    const double slope = fitted_slope(x, y);
    const double target = std::sqrt(1.0 + alpha) / (2.0 * kPi);
    const double relative = std::abs(slope / target - 1.0);
    pass = pass && relative <= 0.05;
    detail += fmt("alpha=%g slope=%.5f target=%.5f rel=%.4f; ", alpha, slope, target, relative);
  }
  const double t = 1e-8;
  const double primes = expected_zero_count_alpha({0.5 + t}, FrequencySet::primes(), 1e-10).value;
  const double relative = std::abs(primes / std::sqrt(std::log(1.0 / t)) * kPi - 1.0);
  pass = pass && relative <= 0.15;
  return {pass, detail + fmt("primes value/sqrt(log)=%.5f target=%.5f rel=%.4f (tols 0.05, 0.15)",
                             primes / std::sqrt(std::log(1.0 / t)), 1.0 / kPi, relative)};
}

Verdict j_integral_suite() {
  bool pass = true;
  std::string detail;
  double worst_exact = 0.0;
  for (double sigma : {0.5 + 1e-8, 0.6, 1.0, 3.0}) {
    const double closed = std::pow(2.0, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    worst_exact = std::max(worst_exact, std::abs(integral_J(0.0, sigma) / closed - 1.0));
  }
  pass = pass && worst_exact <= 1e-14;
  detail += fmt("J(0) rel=%.1e (tol 1e-14); ", worst_exact);
  const double sigma = 0.5 + 1e-8;
  for (double g : {0.5, 1.0, 2.0}) {
    const double scaled = std::pow(2.0 * sigma - 1.0, g + 1.0) * integral_J(g, sigma) / gamma_function(g + 1.0);
    pass = pass && std::abs(scaled - 1.0) <= 0.02;
    detail += fmt("gamma=%g scaled=%.5f; ", g, scaled);
  }
  const double log_ratio = integral_J(-1.0, sigma) / std::log(1.0 / (sigma - 0.5));
  pass = pass && std::abs(log_ratio - 1.0) <= 0.05;
  return {pass, detail + fmt("J(-1)/log=%.5f (tols 0.02, 0.05)", log_ratio)};
}

Verdict moment_shape() {
  bool pass = true;
  std::string detail;
  for (double T : {0.55, 0.6, 0.7}) {
    SimulationConfig config;
    config.interval = {T, 3.0};
    config.trials = 4000;
    config.seed = 11;
    const SimulationSummary summary = simulate(config);
    const double L = std::log(1.0 / (T - 0.5));
    for (int k = 1; k <= 3; ++k) {
      const double moment = estimate_moments(summary.samples, k).value;
      pass = pass && moment <= std::pow(10.0 * k * L, k);
    }
    // log P is allowed to reach -inf; between finite values it must fall strictly.
    std::vector<double> logs;
    for (double lambda : {1.0, 2.0, 3.0}) {
      logs.push_back(std::log(tail_probability(summary.samples, lambda, T).value));
    }
    bool decreasing = std::isfinite(logs[0]);
    for (std::size_t i = 1; i < logs.size(); ++i) {
      decreasing = decreasing && (logs[i] == -std::numeric_limits<double>::infinity() || logs[i] < logs[i - 1]);
    }
    pass = pass && decreasing;
    detail += fmt("T=%g m1..3=%.3f,%.3f,%.3f logP=%.2f,%.2f,%.2f; ", T, estimate_moments(summary.samples, 1).value,
                  estimate_moments(summary.samples, 2).value, estimate_moments(summary.samples, 3).value, logs[0],
                  logs[1], logs[2]);
  }
  const SignStatisticsSummary signs = simulate_sign_statistics(20, 1000, 5);
  const double z = (signs.positive_fraction.value - 0.5) / signs.positive_fraction.standard_error;
  pass = pass && std::abs(z) <= 3.0;
  return {pass, detail + fmt("S+(20)/20 mean=%.4f se=%.4f z=%.2f (|z|<=3)", signs.positive_fraction.value,
                             signs.positive_fraction.standard_error, z)};
}

}  // namespace

int main(int argc, char** argv) {
  const int criterion = argc > 1 ? std::atoi(argv[1]) : 0;
  Verdict (*const checks[])() = {c2_identity,          leading_term,          expansion_vs_quadrature,
                                 monte_carlo_agreement, orthant_correlation,  correlation_decay,
                                 tau_factor,           supercritical_slopes, j_integral_suite,
                                 moment_shape};
  if (criterion < 1 || criterion > 10) {
    std::fprintf(stderr, "usage: acceptance N  (N in 1..10)\n");
    return 2;
  }
  Verdict verdict{false, ""};
  try {
    verdict = checks[criterion - 1]();
  } catch (const std::exception& e) {
    verdict = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %d: %s %s\n", criterion, verdict.pass ? "PASS" : "FAIL", verdict.detail.c_str());
  return verdict.pass ? 0 : 1;
}
