#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "dzeros/expected_zeros.hpp"

namespace dzeros {

/// How the part of the series beyond the explicit head is represented.
enum class TailModel {
  /// sum_{n>N} X_n n^{-sigma} sampled in law from its covariance zeta_{>N}(sigma + sigma').
  exact,
  /// Dropped: the path is the truncated sum_{n<=N}.
  none,
};

/// Scan density: grid points per unit of u = log(1/(sigma - 1/2)).
inline constexpr double kGridPointsPerUnitU = 2000.0;
inline constexpr std::size_t kMaxTruncation = 1'000'000;
/// Explicit head length used with the exact tail unless overridden.
inline constexpr std::size_t kDefaultExactHead = 256;

struct SimulationConfig {
  /// 0 selects default_truncation().
  std::size_t truncation = 0;
  RealInterval interval{0.6, 1.0};
  /// 0 selects kGridPointsPerUnitU over the interval's u-length.
  std::size_t grid_points = 0;
  double bisection_tol = 1e-10;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  TailModel tail = TailModel::exact;

  void validate() const;
  std::size_t resolved_truncation() const;
  std::size_t resolved_grid_points() const;
};

/// Smallest N with sum_{n>N} n^{-2T} < 1e-6 sum_{n<=N} n^{-2T}, capped at kMaxTruncation.
std::size_t adequate_truncation(double T);
/// adequate_truncation for TailModel::none; at most kDefaultExactHead for the exact tail.
std::size_t default_truncation(double T, TailModel tail);
/// Scan points for [T, U], uniform in u.
std::size_t default_grid_points(const RealInterval& interval);

using TrialEngine = std::mt19937_64;

/// Independent stream for one trial, a pure function of (seed, trial).
TrialEngine trial_engine(std::uint64_t seed, std::uint64_t trial);

std::vector<double> sample_coefficients(std::size_t n, TrialEngine& engine);

/// sum_{n<=N} X_n n^{-sigma}, with X_1 = coeffs[0].
double evaluate_path(std::span<const double> coeffs, double sigma);

struct ZeroCountSample {
  std::size_t count = 0;
  /// Sign changes on the grid with every cell halved.
  std::size_t refined_count = 0;
  bool suspect = false;
  /// Zeros found on the base grid, each bisected to the tolerance.
  std::vector<double> roots;
};

/// Sign-change scan on grid_points uniform in u, then bisection in sigma.
ZeroCountSample count_zeros(const std::function<double(double)>& path, const RealInterval& interval,
                            std::size_t grid_points, double bisection_tol);
ZeroCountSample count_zeros(std::span<const double> coeffs, const RealInterval& interval,
                            std::size_t grid_points, double bisection_tol);

/// Polynomial in u on [u_lo, u_hi] held by its Chebyshev coefficients.
class ChebyshevPath {
 public:
  ChebyshevPath(double u_lo, double u_hi, std::vector<double> coefficients);
  double at_u(double u) const;
  double operator()(double sigma) const;

 private:
  double u_lo_;
  double u_hi_;
  std::vector<double> coefficients_;
};

/// Chebyshev nodes needed to resolve a path analytic in |Im u| < pi/2 to
/// about 1e-14 of its size on [u_lo, u_hi]; clamped to [32, 512].
std::size_t chebyshev_node_count(double u_lo, double u_hi);

/// Draws F at fixed abscissae: explicit head of N terms plus, for the exact
/// model, a Gaussian vector with covariance zeta_{>N}(sigma_i + sigma_j).
class JointSampler {
 public:
  JointSampler(std::vector<double> sigmas, std::size_t head, TailModel tail);

  std::size_t head() const { return head_; }
  const std::vector<double>& sigmas() const { return sigmas_; }
  /// Head coefficients first, then the remainder normals, from one stream.
  std::vector<double> sample(TrialEngine& engine, std::vector<double>* coefficients = nullptr) const;

 private:
  std::vector<double> sigmas_;
  std::size_t head_;
  TailModel tail_;
  std::vector<double> head_powers_;  // n^{-sigma_j}, row-major by node; empty when too large
  std::vector<double> remainder_factor_;  // m x m, row-major
};

/// Random paths on a finite interval, interpolated from Chebyshev nodes in u.
class PathSampler {
 public:
  PathSampler(const RealInterval& interval, std::size_t head, TailModel tail);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t head() const { return joint_.head(); }
  ChebyshevPath sample(TrialEngine& engine, std::vector<double>* coefficients = nullptr) const;

 private:
  double u_lo_;
  double u_hi_;
  std::vector<double> nodes_;
  JointSampler joint_;
};

struct SimulationSummary {
  SimulationConfig config;
  std::size_t truncation = 0;
  std::size_t grid_points = 0;
  std::size_t nodes = 0;
  std::vector<ZeroCountSample> samples;
  /// Statistics of refined_count.
  double mean = 0.0;
  double standard_error = 0.0;
  double suspect_rate = 0.0;
};

SimulationSummary simulate(const SimulationConfig& config);

struct Estimate {
  double value;
  double standard_error;
};

/// E N^k over refined counts, jackknife standard error.
Estimate estimate_moments(const std::vector<ZeroCountSample>& samples, int k);
Estimate estimate_moments(const SimulationConfig& config, int k);

/// P(N >= lambda log(1/(T - 1/2))) over refined counts.
Estimate tail_probability(const std::vector<ZeroCountSample>& samples, double lambda, double T);
Estimate tail_probability(const SimulationConfig& config, double lambda);

/// Leave-one-out jackknife standard error of the sample mean.
double jackknife_standard_error(std::span<const double> values);

/// zeta(sk + sl) / sqrt(zeta(2 sk) zeta(2 sl)).
double series_correlation(double sigma_k, double sigma_l);
/// Correlation of sign(X), sign(Y) for a standard Gaussian pair with correlation rho.
double orthant_indicator_correlation(double rho);

Estimate monte_carlo_series_correlation(double sigma_k, double sigma_l, std::size_t trials,
                                        std::uint64_t seed);
Estimate monte_carlo_orthant_correlation(double rho, std::size_t pairs, std::uint64_t seed);

struct SignStatistics {
  int positive = 0;
  int negative = 0;
  /// Exact zeros; counted in neither S+ nor S-.
  int suspect = 0;
};

/// Signs of a truncated path at sigma_n = 1/2 + 2^{-n}, n = 1..R. Throws
/// DomainError when the truncation is not adequate at sigma_R.
SignStatistics sign_statistics(std::span<const double> coeffs, int R);

struct SignStatisticsSummary {
  int R;
  std::vector<SignStatistics> per_trial;
  /// Mean and standard error of S+(R)/R.
  Estimate positive_fraction;
};

SignStatisticsSummary simulate_sign_statistics(int R, std::size_t trials, std::uint64_t seed,
                                               std::size_t head = kDefaultExactHead,
                                               TailModel tail = TailModel::exact);

/// Workers for trial loops: DIRICHLET_ZEROS_THREADS if set, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dzeros
