#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <vector>

#include "dzeros/errors.hpp"
#include "dzeros/expected_zeros.hpp"
#include "dzeros/simulator.hpp"
#include "oracles.hpp"

using namespace dzeros;

namespace {

std::vector<double> coefficients(std::uint64_t seed, std::size_t n) {
  TrialEngine engine = trial_engine(seed, 0);
  return sample_coefficients(n, engine);
}

struct ThreadsOverride {
  explicit ThreadsOverride(const char* value) { setenv("DIRICHLET_ZEROS_THREADS", value, 1); }
  ~ThreadsOverride() { unsetenv("DIRICHLET_ZEROS_THREADS"); }
};

}  // namespace

TEST_CASE("coefficient streams are reproducible and standard normal") {
  CHECK(coefficients(5, 100) == coefficients(5, 100));
  CHECK(coefficients(5, 100) != coefficients(6, 100));
  TrialEngine a = trial_engine(5, 1);
  TrialEngine b = trial_engine(5, 2);
  CHECK(sample_coefficients(10, a) != sample_coefficients(10, b));

  const std::vector<double> x = coefficients(11, 1'000'000);
  oracle::KahanSum sum;
  oracle::KahanSum squares;
  for (double v : x) {
    sum.add(v);
    squares.add(v * v);
  }
  const double mean = static_cast<double>(sum.value()) / x.size();
  const double var = static_cast<double>(squares.value()) / x.size() - mean * mean;
  CHECK(std::abs(mean) < 3e-3);
  CHECK(std::abs(var - 1.0) < 5e-3);
}

TEST_CASE("path evaluation") {
  const std::vector<double> first{1.0, 0.0, 0.0};
  const std::vector<double> second{0.0, 1.0, 0.0};
  for (double sigma : {0.51, 0.8, 2.0}) {
    CHECK(evaluate_path(first, sigma) == 1.0);
    CHECK(std::abs(evaluate_path(second, sigma) - std::pow(2.0, -sigma)) < 1e-15);
  }
}

TEST_CASE("path variance matches the finite sum of n^(-2 sigma)") {
  constexpr std::size_t N = 50;
  constexpr std::size_t trials = 20000;
  const double sigma = 0.7;
  double expected = 0.0;
  for (std::size_t n = 1; n <= N; ++n) expected += std::pow(static_cast<double>(n), -2.0 * sigma);
  oracle::KahanSum squares;
  for (std::size_t i = 0; i < trials; ++i) {
    TrialEngine engine = trial_engine(3, i);
    const double v = evaluate_path(sample_coefficients(N, engine), sigma);
    squares.add(v * v);
  }
  const double var = static_cast<double>(squares.value()) / trials;
  const double se = expected * std::sqrt(2.0 / trials);
  CHECK(std::abs(var - expected) < 3.0 * se);
}

TEST_CASE("zero counting on closed-form paths") {
  const RealInterval interval{0.6, 1.0};
  const std::vector<double> constant{1.0};
  const ZeroCountSample none = count_zeros(constant, interval, 200, 1e-12);
  CHECK(none.count == 0);
  CHECK(none.refined_count == 0);
  CHECK_FALSE(none.suspect);

  // 1 - 2^{0.8 - sigma} vanishes at sigma = 0.8 only.
  const std::vector<double> one_root{1.0, -std::pow(2.0, 0.8)};
  const ZeroCountSample z = count_zeros(one_root, interval, 200, 1e-12);
  REQUIRE(z.count == 1);
  CHECK(z.refined_count == 1);
  CHECK(std::abs(z.roots[0] - 0.8) < 1e-11);
}

TEST_CASE("property: zero counts split at an interior point") {
  const double T = 0.55;
  const double U = 0.7;
  const double V = 1.2;
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::vector<double> c = coefficients(seed, 300);
    const ZeroCountSample whole = count_zeros(c, {T, V}, 4000, 1e-12);
    const ZeroCountSample left = count_zeros(c, {T, U}, 4000, 1e-12);
    const ZeroCountSample right = count_zeros(c, {U, V}, 4000, 1e-12);
    if (whole.suspect || left.suspect || right.suspect) continue;
    const bool near_cut = std::any_of(whole.roots.begin(), whole.roots.end(),
                                      [&](double r) { return std::abs(r - U) < 1e-9; });
    if (near_cut) continue;
    CHECK(whole.count == left.count + right.count);
    ++compared;
  }
  CHECK(compared > 190);
}

TEST_CASE("truncation adequacy rule") {
  for (double T : {1.0, 2.0}) {
    const std::size_t N = adequate_truncation(T);
    const double s = 2.0 * T;
    // sum_{n>M} n^{-s} by Euler-Maclaurin through the f' term.
    const auto tail = [s](double M) {
      return oracle::log_power_tail(s, 0, M) - 0.5 * std::pow(M, -s) + s * std::pow(M, -s - 1.0) / 12.0;
    };
    oracle::KahanSum head;
    for (std::size_t n = 1; n < N; ++n) head.add(std::pow(static_cast<long double>(n), -s));
    const double head_before = static_cast<double>(head.value());
    const double head_at = head_before + std::pow(static_cast<double>(N), -s);
    CHECK(tail(static_cast<double>(N)) < 1e-6 * head_at);
    CHECK(tail(static_cast<double>(N - 1)) >= 1e-6 * head_before);
  }
  CHECK(adequate_truncation(0.6) == kMaxTruncation);
  CHECK(default_truncation(0.6, TailModel::exact) == kDefaultExactHead);
  CHECK(default_truncation(2.0, TailModel::exact) == adequate_truncation(2.0));
}

TEST_CASE("configuration validation") {
  SimulationConfig bad;
  bad.interval = {0.6, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  SimulationConfig no_trials;
  no_trials.trials = 0;
  CHECK_THROWS_AS(no_trials.validate(), DomainError);
  SimulationConfig tiny;
  tiny.truncation = 1;
  CHECK_THROWS_AS(tiny.validate(), DomainError);
}

TEST_CASE("Chebyshev interpolation of a fixed path") {
  const std::vector<double> c = coefficients(9, 200);
  const RealInterval interval{0.5 + 1e-4, 1.0};
  const double u_lo = -std::log(interval.U - 0.5);
  const double u_hi = -std::log(interval.T - 0.5);
  const std::size_t m = chebyshev_node_count(u_lo, u_hi);
  std::vector<double> nodes(m);
  std::vector<double> values(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / m;
    nodes[j] = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * std::cos(theta);
    values[j] = evaluate_path(c, 0.5 + std::exp(-nodes[j]));
  }
  std::vector<double> coef(m);
  for (std::size_t k = 0; k < m; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += values[j] * std::cos(std::numbers::pi * k * (j + 0.5) / m);
    coef[k] = (k == 0 ? 1.0 : 2.0) * s / m;
  }
  const ChebyshevPath path(u_lo, u_hi, coef);
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  for (double sigma : {0.5001, 0.5003, 0.52, 0.6, 0.77, 0.99}) {
    CHECK(std::abs(path(sigma) - evaluate_path(c, sigma)) < 1e-11 * scale);
  }
}

TEST_CASE("simulation is independent of the worker count") {
  SimulationConfig config;
  config.interval = {0.6, 1.0};
  config.trials = 64;
  config.seed = 42;
  SimulationSummary serial;
  SimulationSummary parallel;
  {
    ThreadsOverride one("1");
    serial = simulate(config);
  }
  {
    ThreadsOverride four("4");
    parallel = simulate(config);
  }
  REQUIRE(serial.samples.size() == parallel.samples.size());
  for (std::size_t i = 0; i < serial.samples.size(); ++i) {
    CHECK(serial.samples[i].refined_count == parallel.samples[i].refined_count);
    CHECK(serial.samples[i].roots == parallel.samples[i].roots);
  }
  CHECK(serial.mean == parallel.mean);
}

TEST_CASE("Monte Carlo mean against quadrature on [0.7, 1]") {
  SimulationConfig config;
  config.interval = {0.7, 1.0};
  config.trials = 3000;
  config.seed = 2;
  const SimulationSummary s = simulate(config);
  const double exact = expected_zero_count(config.interval).value;
  CHECK(std::abs(s.mean - exact) < 3.0 * s.standard_error);
  CHECK(s.suspect_rate < 0.01);
}

TEST_CASE("moments and tail probabilities") {
  SimulationConfig config;
  config.interval = {0.55, 1.0};
  config.trials = 2000;
  config.seed = 8;
  const SimulationSummary s = simulate(config);
  const Estimate m1 = estimate_moments(s.samples, 1);
  CHECK(m1.value == doctest::Approx(s.mean).epsilon(1e-15));
  double previous_root = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const double root = std::pow(estimate_moments(s.samples, k).value, 1.0 / k);
    CHECK(root >= previous_root - 1e-12);
    previous_root = root;
  }
  const double log_inv = std::log(1.0 / (config.interval.T - 0.5));
  CHECK(estimate_moments(s.samples, 2).value <= std::pow(10.0 * 2.0 * log_inv, 2));
  double previous = 1.0;
  for (double lambda : {1e-9, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0}) {
    const Estimate p = tail_probability(s.samples, lambda, config.interval.T);
    CHECK(p.value <= previous);
    CHECK(p.value >= 0.0);
    previous = p.value;
  }
}

TEST_CASE("jackknife standard error of a mean is s / sqrt(n)") {
  const std::vector<double> v{1.0, 4.0, 2.0, 8.0, 5.0, 7.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double s = std::sqrt(ss / (v.size() - 1));
  CHECK(std::abs(jackknife_standard_error(v) - s / std::sqrt(v.size())) < 1e-14);
}

TEST_CASE("series correlation") {
  CHECK(series_correlation(0.8, 0.8) == 1.0);
  CHECK_THROWS_AS(series_correlation(0.5, 0.8), DomainError);
  const double exact = series_correlation(0.75, 1.0);
  const Estimate mc = monte_carlo_series_correlation(0.75, 1.0, 100000, 4);
  CHECK(std::abs(mc.value - exact) < 3.0 * mc.standard_error);
  for (int k = 1; k <= 25; ++k) {
    for (int l = 1; l <= 25; ++l) {
      const double c = series_correlation(0.5 + std::ldexp(1.0, -k), 0.5 + std::ldexp(1.0, -l));
      CHECK(std::abs(c) <= 3.0 / std::pow(std::sqrt(2.0), std::abs(k - l)));
    }
  }
}

TEST_CASE("orthant indicator correlation") {
  CHECK(orthant_indicator_correlation(0.0) == 0.0);
  CHECK(std::abs(orthant_indicator_correlation(0.5) - 1.0 / 3.0) < 1e-15);
  CHECK_THROWS_AS(orthant_indicator_correlation(1.0), DomainError);
  CHECK_THROWS_AS(orthant_indicator_correlation(-1.5), DomainError);
  for (double rho : {-0.7, 0.2, 0.9}) {
    const Estimate mc = monte_carlo_orthant_correlation(rho, 200000, 12);
    CHECK(std::abs(mc.value - orthant_indicator_correlation(rho)) < 3.0 * mc.standard_error);
  }
}

TEST_CASE("sign statistics") {
  const SignStatisticsSummary s = simulate_sign_statistics(20, 1000, 5);
  REQUIRE(s.per_trial.size() == 1000);
  for (const SignStatistics& t : s.per_trial) CHECK(t.positive + t.negative + t.suspect == 20);
  CHECK(std::abs(s.positive_fraction.value - 0.5) < 3.0 * s.positive_fraction.standard_error);

  // A short truncated path cannot resolve sigma_R close to 1/2.
  CHECK_THROWS_AS(sign_statistics(coefficients(1, 100), 20), DomainError);
  CHECK_THROWS_AS(simulate_sign_statistics(0, 10, 1), DomainError);
}

TEST_CASE("sign statistics deviations grow slower than the trivial envelope") {
  // |S+ - R/2| <= R/2 always, so dev / R^0.6 is trivially below R^0.4 / 2. The
  // 95th percentile of the scaled deviation must grow more slowly than that.
  constexpr std::size_t trials = 400;
  const auto q95 = [&](int R) {
    const SignStatisticsSummary summary = simulate_sign_statistics(R, trials, 77);
    std::vector<double> scaled;
    for (const SignStatistics& t : summary.per_trial) {
      scaled.push_back(std::abs(t.positive - R / 2.0) / std::pow(R, 0.6));
    }
    std::sort(scaled.begin(), scaled.end());
    return scaled[static_cast<std::size_t>(0.95 * trials)];
  };
  const double low = q95(10);
  const double high = q95(25);
  CHECK(high / low < std::pow(25.0 / 10.0, 0.4));
}
