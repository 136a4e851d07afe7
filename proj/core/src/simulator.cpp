#include "dzeros/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "dzeros/errors.hpp"
#include "dzeros/zeta.hpp"

namespace dzeros {
namespace {

constexpr double kAdequacyRatio = 1e-6;
constexpr std::size_t kMinNodes = 32;
constexpr std::size_t kMaxNodes = 512;
constexpr std::size_t kMaxPrecomputedPowers = std::size_t{1} << 22;
constexpr int kMaxDyadicLevel = 48;
constexpr std::size_t kPairsPerStream = 4096;

double u_of(double sigma) { return -std::log(sigma - 0.5); }
double sigma_of(double u) { return 0.5 + std::exp(-u); }

// Tail sum_{n>N} n^{-a} against the head sum_{n<=N} n^{-a}.
bool adequate(double a, std::size_t n, double total) {
  const double tail = zeta_tail(a, 0, n + 1).value;
  return tail < kAdequacyRatio * (total - tail);
}

void require_adequate(std::size_t n, double sigma) {
  const double a = 2.0 * sigma;
  if (!adequate(a, n, zeta_tail(a, 0, 1).value)) {
    throw DomainError("truncation N = " + std::to_string(n) + " leaves more than 1e-6 of the variance at sigma = " +
                      std::to_string(sigma));
  }
}

bool positive(double v) { return v > 0.0; }

// Scan on a grid uniform in u over [u_a, u_b] (u_a <-> U, u_b <-> T).
ZeroCountSample scan_in_u(const std::function<double(double)>& at_u, double u_a, double u_b,
                          std::size_t grid_points, double bisection_tol) {
  ZeroCountSample out;
  const double step = (u_b - u_a) / static_cast<double>(grid_points - 1);
  double u_prev = u_a;
  double v_prev = at_u(u_a);
  for (std::size_t j = 1; j < grid_points; ++j) {
    const double u_next = j + 1 == grid_points ? u_b : u_a + step * static_cast<double>(j);
    const double v_next = at_u(u_next);
    const double v_mid = at_u(0.5 * (u_prev + u_next));
    out.refined_count += (positive(v_prev) != positive(v_mid)) + (positive(v_mid) != positive(v_next));
    if (positive(v_prev) != positive(v_next)) {
      ++out.count;
      double lo = u_prev;
      double hi = u_next;
      const bool lo_positive = positive(v_prev);
      for (int it = 0; it < 200 && std::exp(-lo) - std::exp(-hi) > bisection_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (positive(at_u(mid)) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.roots.push_back(0.5 * (sigma_of(lo) + sigma_of(hi)));
    }
    u_prev = u_next;
    v_prev = v_next;
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.suspect = out.count != out.refined_count;
  return out;
}

void check_scan_arguments(const RealInterval& interval, std::size_t grid_points, double bisection_tol) {
  interval.validate();
  if (!std::isfinite(interval.U)) throw DomainError("zero counting needs a finite interval");
  if (grid_points < 2) throw DomainError("zero counting needs at least two grid points");
  if (!(bisection_tol > 0.0)) throw DomainError("bisection tolerance must be positive");
}

}  // namespace

void SimulationConfig::validate() const {
  interval.validate();
  if (!std::isfinite(interval.U) || !(interval.U > interval.T)) {
    throw DomainError("simulation interval must be finite with T < U");
  }
  if (truncation == 1) throw DomainError("truncation must be at least 2");
  if (truncation > kMaxTruncation) throw DomainError("truncation exceeds the cap of 1e6 terms");
  if (grid_points == 1) throw DomainError("grid needs at least two points");
  if (trials < 1) throw DomainError("at least one trial is required");
  if (!(bisection_tol > 0.0)) throw DomainError("bisection tolerance must be positive");
}

std::size_t SimulationConfig::resolved_truncation() const {
  return truncation != 0 ? truncation : default_truncation(interval.T, tail);
}

std::size_t SimulationConfig::resolved_grid_points() const {
  return grid_points != 0 ? grid_points : default_grid_points(interval);
}

std::size_t adequate_truncation(double T) {
  if (!(T > 0.5)) throw DomainError("adequate_truncation: T must exceed 1/2");
  const double a = 2.0 * T;
  const double total = zeta_tail(a, 0, 1).value;
  std::size_t hi = 2;
  while (hi < kMaxTruncation && !adequate(a, hi, total)) hi = std::min(hi * 2, kMaxTruncation);
  if (!adequate(a, hi, total)) return kMaxTruncation;
  std::size_t lo = hi / 2;  // inadequate or below 2
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (adequate(a, mid, total) ? hi : lo) = mid;
  }
  return std::max<std::size_t>(hi, 2);
}

std::size_t default_truncation(double T, TailModel tail) {
  const std::size_t n = adequate_truncation(T);
  return tail == TailModel::exact ? std::min(n, kDefaultExactHead) : n;
}

std::size_t default_grid_points(const RealInterval& interval) {
  const double length = u_of(interval.T) - u_of(interval.U);
  return static_cast<std::size_t>(std::ceil(length * kGridPointsPerUnitU)) + 1;
}

TrialEngine trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return TrialEngine(seq);
}

std::vector<double> sample_coefficients(std::size_t n, TrialEngine& engine) {
  std::normal_distribution<double> normal;
  std::vector<double> out(n);
  for (auto& x : out) x = normal(engine);
  return out;
}

double evaluate_path(std::span<const double> coeffs, double sigma) {
  if (!(sigma > 0.5)) throw DomainError("evaluate_path: sigma must exceed 1/2");
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) total += coeffs[i] * std::exp(-sigma * std::log(static_cast<double>(i + 1)));
  }
  return total;
}

ZeroCountSample count_zeros(const std::function<double(double)>& path, const RealInterval& interval,
                            std::size_t grid_points, double bisection_tol) {
  check_scan_arguments(interval, grid_points, bisection_tol);
  if (interval.T == interval.U) return {};
  const auto at_u = [&path](double u) { return path(sigma_of(u)); };
  return scan_in_u(at_u, u_of(interval.U), u_of(interval.T), grid_points, bisection_tol);
}

ZeroCountSample count_zeros(std::span<const double> coeffs, const RealInterval& interval,
                            std::size_t grid_points, double bisection_tol) {
  return count_zeros([coeffs](double sigma) { return evaluate_path(coeffs, sigma); }, interval, grid_points,
                     bisection_tol);
}

ChebyshevPath::ChebyshevPath(double u_lo, double u_hi, std::vector<double> coefficients)
    : u_lo_(u_lo), u_hi_(u_hi), coefficients_(std::move(coefficients)) {}

double ChebyshevPath::at_u(double u) const {
  const double x = (2.0 * u - (u_lo_ + u_hi_)) / (u_hi_ - u_lo_);
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coefficients_.size(); k-- > 1;) {
    const double b0 = coefficients_[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coefficients_[0] + x * b1 - b2;
}

double ChebyshevPath::operator()(double sigma) const { return at_u(u_of(sigma)); }

std::size_t chebyshev_node_count(double u_lo, double u_hi) {
  const double half = 0.5 * (u_hi - u_lo);
  if (!(half > 0.0)) return kMinNodes;
  // Bernstein ellipse reaching 0.8 of the way to |Im u| = pi/2.
  const double b = 0.8 * 0.5 * std::numbers::pi / half;
  const double rho = b + std::sqrt(b * b + 1.0);
  const double needed = std::ceil(14.0 * std::log(10.0) / std::log(rho));
  return std::clamp(static_cast<std::size_t>(needed), kMinNodes, kMaxNodes);
}

JointSampler::JointSampler(std::vector<double> sigmas, std::size_t head, TailModel tail)
    : sigmas_(std::move(sigmas)), head_(head), tail_(tail) {
  for (double s : sigmas_) {
    if (!(s > 0.5)) throw DomainError("sampling points must exceed 1/2");
  }
  const std::size_t m = sigmas_.size();
  if (head_ * m <= kMaxPrecomputedPowers) {
    head_powers_.resize(head_ * m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t n = 1; n <= head_; ++n) {
        head_powers_[j * head_ + n - 1] = std::exp(-sigmas_[j] * std::log(static_cast<double>(n)));
      }
    }
  }
  if (tail_ == TailModel::none) return;

  Eigen::MatrixXd cov(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = zeta_tail(sigmas_[i] + sigmas_[j], 0, head_ + 1).value;
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  // Factor the correlation matrix; scales span many decades near sigma = 1/2.
  Eigen::VectorXd scale = cov.diagonal().cwiseSqrt();
  Eigen::MatrixXd corr = cov;
  for (Eigen::Index i = 0; i < corr.rows(); ++i) {
    for (Eigen::Index j = 0; j < corr.cols(); ++j) {
      const double d = scale(i) * scale(j);
      corr(i, j) = d > 0.0 ? corr(i, j) / d : (i == j ? 1.0 : 0.0);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  if (eig.info() != Eigen::Success) throw PrecisionError("remainder covariance factorisation failed");
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd factor = scale.asDiagonal() * eig.eigenvectors() * roots.asDiagonal();
  remainder_factor_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      remainder_factor_[i * m + j] = factor(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

std::vector<double> JointSampler::sample(TrialEngine& engine, std::vector<double>* coefficients) const {
  const std::size_t m = sigmas_.size();
  std::vector<double> x = sample_coefficients(head_, engine);
  std::vector<double> values(m, 0.0);
  if (!head_powers_.empty()) {
    for (std::size_t j = 0; j < m; ++j) {
      const double* row = &head_powers_[j * head_];
      double total = 0.0;
      for (std::size_t n = 0; n < head_; ++n) total += x[n] * row[n];
      values[j] = total;
    }
  } else {
    for (std::size_t j = 0; j < m; ++j) values[j] = evaluate_path(x, sigmas_[j]);
  }
  if (tail_ == TailModel::exact) {
    const std::vector<double> z = sample_coefficients(m, engine);
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = &remainder_factor_[i * m];
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) total += row[j] * z[j];
      values[i] += total;
    }
  }
  if (coefficients != nullptr) *coefficients = std::move(x);
  return values;
}

namespace {

std::vector<double> chebyshev_u_nodes(double u_lo, double u_hi, std::size_t m) {
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m));
    out[j] = 0.5 * (u_lo + u_hi) + 0.5 * (u_hi - u_lo) * x;
  }
  return out;
}

std::vector<double> sigmas_at(const std::vector<double>& u_nodes) {
  std::vector<double> out;
  out.reserve(u_nodes.size());
  for (double u : u_nodes) out.push_back(sigma_of(u));
  return out;
}

// Chebyshev coefficients from values at first-kind nodes.
std::vector<double> chebyshev_coefficients(const std::vector<double>& values) {
  const std::size_t m = values.size();
  std::vector<double> c(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      total += values[j] * std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) /
                                    static_cast<double>(m));
    }
    c[k] = 2.0 * total / static_cast<double>(m);
  }
  c[0] *= 0.5;
  return c;
}

}  // namespace

PathSampler::PathSampler(const RealInterval& interval, std::size_t head, TailModel tail)
    : u_lo_(u_of(interval.U)),
      u_hi_(u_of(interval.T)),
      nodes_(chebyshev_u_nodes(u_lo_, u_hi_, chebyshev_node_count(u_lo_, u_hi_))),
      joint_(sigmas_at(nodes_), head, tail) {}

ChebyshevPath PathSampler::sample(TrialEngine& engine, std::vector<double>* coefficients) const {
  return ChebyshevPath(u_lo_, u_hi_, chebyshev_coefficients(joint_.sample(engine, coefficients)));
}

SimulationSummary simulate(const SimulationConfig& config) {
  config.validate();
  SimulationSummary out;
  out.config = config;
  out.truncation = config.resolved_truncation();
  out.grid_points = config.resolved_grid_points();
  const PathSampler sampler(config.interval, out.truncation, config.tail);
  out.nodes = sampler.node_count();
  out.samples.resize(config.trials);
  const double u_a = u_of(config.interval.U);
  const double u_b = u_of(config.interval.T);
  parallel_for(config.trials, [&](std::size_t i) {
    TrialEngine engine = trial_engine(config.seed, i);
    const ChebyshevPath path = sampler.sample(engine);
    out.samples[i] = scan_in_u([&path](double u) { return path.at_u(u); }, u_a, u_b, out.grid_points,
                               config.bisection_tol);
  });
  std::vector<double> counts;
  std::size_t suspects = 0;
  for (const auto& s : out.samples) {
    counts.push_back(static_cast<double>(s.refined_count));
    suspects += s.suspect ? 1 : 0;
  }
  double total = 0.0;
  for (double c : counts) total += c;
  out.mean = total / static_cast<double>(counts.size());
  out.standard_error = jackknife_standard_error(counts);
  out.suspect_rate = static_cast<double>(suspects) / static_cast<double>(counts.size());
  return out;
}

double jackknife_standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (double v : values) total += v;
  const double dn = static_cast<double>(n);
  // Leave-one-out means and their average.
  double loo_mean = 0.0;
  for (double v : values) loo_mean += (total - v) / (dn - 1.0);
  loo_mean /= dn;
  double ss = 0.0;
  for (double v : values) {
    const double d = (total - v) / (dn - 1.0) - loo_mean;
    ss += d * d;
  }
  return std::sqrt((dn - 1.0) / dn * ss);
}

Estimate estimate_moments(const std::vector<ZeroCountSample>& samples, int k) {
  if (k < 1) throw DomainError("moment order must be at least 1");
  if (samples.empty()) throw DomainError("no samples");
  std::vector<double> powers;
  powers.reserve(samples.size());
  double total = 0.0;
  for (const auto& s : samples) {
    powers.push_back(std::pow(static_cast<double>(s.refined_count), k));
    total += powers.back();
  }
  return {total / static_cast<double>(powers.size()), jackknife_standard_error(powers)};
}

Estimate estimate_moments(const SimulationConfig& config, int k) {
  if (k < 1) throw DomainError("moment order must be at least 1");
  return estimate_moments(simulate(config).samples, k);
}

Estimate tail_probability(const std::vector<ZeroCountSample>& samples, double lambda, double T) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(T > 0.5)) throw DomainError("T must exceed 1/2");
  if (samples.empty()) throw DomainError("no samples");
  const double threshold = lambda * std::log(1.0 / (T - 0.5));
  std::vector<double> hits;
  hits.reserve(samples.size());
  double total = 0.0;
  for (const auto& s : samples) {
    hits.push_back(static_cast<double>(s.refined_count) >= threshold ? 1.0 : 0.0);
    total += hits.back();
  }
  return {total / static_cast<double>(hits.size()), jackknife_standard_error(hits)};
}

Estimate tail_probability(const SimulationConfig& config, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  return tail_probability(simulate(config).samples, lambda, config.interval.T);
}

double series_correlation(double sigma_k, double sigma_l) {
  if (!(sigma_k > 0.5) || !(sigma_l > 0.5)) throw DomainError("series_correlation: sigma must exceed 1/2");
  if (sigma_k == sigma_l) return 1.0;
  const double cross = zeta_tail(sigma_k + sigma_l, 0, 1).value;
  return cross / std::sqrt(zeta_tail(2.0 * sigma_k, 0, 1).value * zeta_tail(2.0 * sigma_l, 0, 1).value);
}

double orthant_indicator_correlation(double rho) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("orthant correlation needs |rho| < 1");
  return 2.0 / std::numbers::pi * std::atan(rho / std::sqrt(1.0 - rho * rho));
}

Estimate monte_carlo_series_correlation(double sigma_k, double sigma_l, std::size_t trials, std::uint64_t seed) {
  if (trials < 3) throw DomainError("correlation estimate needs at least three trials");
  const JointSampler sampler({sigma_k, sigma_l}, kDefaultExactHead, TailModel::exact);
  std::vector<std::array<double, 2>> draws(trials);
  parallel_for(trials, [&](std::size_t i) {
    TrialEngine engine = trial_engine(seed, i);
    const auto v = sampler.sample(engine);
    draws[i] = {v[0], v[1]};
  });
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (const auto& [x, y] : draws) {
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double n = static_cast<double>(trials);
  const double cxy = sxy - sx * sy / n;
  const double cxx = sxx - sx * sx / n;
  const double cyy = syy - sy * sy / n;
  const double r = cxy / std::sqrt(cxx * cyy);
  return {r, (1.0 - r * r) / std::sqrt(n - 3.0)};
}

Estimate monte_carlo_orthant_correlation(double rho, std::size_t pairs, std::uint64_t seed) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("orthant correlation needs |rho| < 1");
  if (pairs < 2) throw DomainError("need at least two pairs");
  const double c = std::sqrt(1.0 - rho * rho);
  const std::size_t streams = (pairs + kPairsPerStream - 1) / kPairsPerStream;
  std::vector<double> products(pairs);
  parallel_for(streams, [&](std::size_t s) {
    TrialEngine engine = trial_engine(seed, s);
    std::normal_distribution<double> normal;
    const std::size_t end = std::min(pairs, (s + 1) * kPairsPerStream);
    for (std::size_t i = s * kPairsPerStream; i < end; ++i) {
      const double x = normal(engine);
      const double y = rho * x + c * normal(engine);
      products[i] = ((x > 0.0) == (y > 0.0)) ? 1.0 : -1.0;
    }
  });
  double total = 0.0;
  for (double p : products) total += p;
  const double mean = total / static_cast<double>(pairs);
  return {mean, jackknife_standard_error(products)};
}

SignStatistics sign_statistics(std::span<const double> coeffs, int R) {
  if (R < 1 || R > kMaxDyadicLevel) throw DomainError("sign statistics need 1 <= R <= 48");
  require_adequate(coeffs.size(), 0.5 + std::ldexp(1.0, -R));
  SignStatistics out;
  for (int n = 1; n <= R; ++n) {
    const double v = evaluate_path(coeffs, 0.5 + std::ldexp(1.0, -n));
    if (v > 0.0) {
      ++out.positive;
    } else if (v < 0.0) {
      ++out.negative;
    } else {
      ++out.suspect;
    }
  }
  return out;
}

SignStatisticsSummary simulate_sign_statistics(int R, std::size_t trials, std::uint64_t seed, std::size_t head,
                                               TailModel tail) {
  if (R < 1 || R > kMaxDyadicLevel) throw DomainError("sign statistics need 1 <= R <= 48");
  if (trials < 1) throw DomainError("at least one trial is required");
  if (head < 1) throw DomainError("head must contain at least one term");
  if (tail == TailModel::none) require_adequate(head, 0.5 + std::ldexp(1.0, -R));
  std::vector<double> sigmas;
  for (int n = 1; n <= R; ++n) sigmas.push_back(0.5 + std::ldexp(1.0, -n));
  const JointSampler sampler(sigmas, head, tail);
  SignStatisticsSummary out{R, std::vector<SignStatistics>(trials), {}};
  parallel_for(trials, [&](std::size_t i) {
    TrialEngine engine = trial_engine(seed, i);
    SignStatistics s;
    for (double v : sampler.sample(engine)) {
      if (v > 0.0) {
        ++s.positive;
      } else if (v < 0.0) {
        ++s.negative;
      } else {
        ++s.suspect;
      }
    }
    out.per_trial[i] = s;
  });
  std::vector<double> fractions;
  double total = 0.0;
  for (const auto& s : out.per_trial) {
    fractions.push_back(static_cast<double>(s.positive) / R);
    total += fractions.back();
  }
  out.positive_fraction = {total / static_cast<double>(trials), jackknife_standard_error(fractions)};
  return out;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("DIRICHLET_ZEROS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dzeros
