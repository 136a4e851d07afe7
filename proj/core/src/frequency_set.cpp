#include "dzeros/frequency_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "dzeros/errors.hpp"
#include "dzeros/expected_zeros.hpp"
#include "dzeros/gamma.hpp"
#include "dzeros/primes.hpp"
#include "dzeros/quadrature.hpp"
#include "dzeros/zeta.hpp"

namespace dzeros {

namespace detail {

struct SetSource {
  SetKind kind;
  double alpha;
  std::string name;

  SetSource(SetKind k, double a, std::string n) : kind(k), alpha(a), name(std::move(n)) {}
  virtual ~SetSource() = default;
  virtual std::array<BoundedValue, 3> log_sums(double s) const = 0;
  virtual double log_second_derivative(double s) const = 0;
  virtual double tail_bound(double sigma) const = 0;
  virtual std::optional<CountingFit> fit() const { return std::nullopt; }
};

}  // namespace detail

namespace {

using detail::SetSource;

constexpr double kInvPi = std::numbers::inv_pi;

void require_s(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("frequency-set sums need s > 1");
}

double zeta_tail_bound(double sigma) { return zeta_kac_model().tail_bound(sigma); }

// Quadratic c0 + c1 L + c2 L^2 in L = log p.
using LogPoly = std::array<double, 3>;

double eval(const LogPoly& q, double l) { return q[0] + l * (q[1] + l * q[2]); }

LogPoly power_poly(int j) {
  LogPoly q{0.0, 0.0, 0.0};
  q[static_cast<std::size_t>(j)] = 1.0;
  return q;
}

LogPoly centred_square(double m) { return {m * m, -2.0 * m, 1.0}; }

class IntegerSet final : public SetSource {
 public:
  IntegerSet() : SetSource(SetKind::integers, 0.0, "integers") {}

  std::array<BoundedValue, 3> log_sums(double s) const override {
    const ZetaJet jet = zeta_jet(s);
    return {BoundedValue{jet.value.value, jet.value.error_bound},
            BoundedValue{-jet.first.value, jet.first.error_bound},
            BoundedValue{jet.second.value, jet.second.error_bound}};
  }
  double log_second_derivative(double s) const override { return dzeros::log_zeta_second_derivative(s); }
  double tail_bound(double sigma) const override { return zeta_tail_bound(sigma); }
};

// a_n^2 = tau_k(n): derivatives of zeta^k by the Leibniz rule.
class DivisorSet final : public SetSource {
 public:
  explicit DivisorSet(int k)
      : SetSource(SetKind::weighted, k - 1.0, k == 2 ? "tau-weighted" : "tau" + std::to_string(k) + "-weighted"),
        k_(k) {}

  std::array<BoundedValue, 3> log_sums(double s) const override {
    const ZetaJet jet = zeta_jet(s);
    const double k = k_;
    const double z0 = jet.value.value;
    const double z1 = jet.first.value;
    const double z2 = jet.second.value;
    const double zk1 = std::pow(z0, k - 1.0);
    const double Z = zk1 * z0;
    const double Z1 = k * zk1 * z1;
    const double Z2 = k * (k - 1.0) * std::pow(z0, k - 2.0) * z1 * z1 + k * zk1 * z2;
    // Relative errors of the factors, propagated to first order.
    const double e0 = jet.value.error_bound / z0;
    const double e1 = jet.first.error_bound / std::abs(z1);
    const double e2 = jet.second.error_bound / std::abs(z2);
    const double eps = std::numeric_limits<double>::epsilon();
    return {BoundedValue{Z, std::abs(Z) * (k * e0 + 4.0 * k * eps)},
            BoundedValue{-Z1, std::abs(Z1) * ((k - 1.0) * e0 + e1 + 4.0 * k * eps)},
            BoundedValue{Z2, std::abs(Z2) * (k * e0 + 2.0 * e1 + e2 + 8.0 * k * eps)}};
  }
  double log_second_derivative(double s) const override {
    const auto sums = log_sums(s);
    const double r1 = sums[1].value / sums[0].value;
    const double r2 = sums[2].value / sums[0].value;
    return r2 - r1 * r1;
  }
  double tail_bound(double sigma) const override { return std::sqrt(static_cast<double>(k_)) * zeta_tail_bound(sigma); }

 private:
  int k_;
};

// Weighted finite head (log p_i, a_i^2) plus a set-specific tail.
class HeadSet : public SetSource {
 public:
  using SetSource::SetSource;

  std::array<BoundedValue, 3> log_sums(double s) const override {
    require_s(s);
    std::array<BoundedValue, 3> out{};
    for (int j = 0; j < 3; ++j) {
      const LogPoly q = power_poly(j);
      const BoundedValue tail = tail_sum(s, 0.0, q);
      out[static_cast<std::size_t>(j)] = {head_sum(s, 0.0, q) + tail.value, tail.error_bound};
    }
    return out;
  }

  // Variance of log p under the weights a_p^2 p^{-s}; central form avoids
  // the cancellation in Z''/Z - (Z'/Z)^2 when one element dominates.
  double log_second_derivative(double s) const override {
    require_s(s);
    const double c = logs_.front();
    const double w = head_sum(s, c, power_poly(0)) + tail_sum(s, c, power_poly(0)).value;
    const double m = (head_sum(s, c, power_poly(1)) + tail_sum(s, c, power_poly(1)).value) / w;
    const LogPoly q = centred_square(m);
    const double v = (head_sum(s, c, q) + tail_sum(s, c, q).value) / w;
    if (!(v > 0.0)) throw PrecisionError("(log Z)'' lost positivity at s = " + std::to_string(s));
    return v;
  }

  double tail_bound(double sigma) const override {
    const double a1 = std::sqrt(weights_.front());
    double total = 0.0;
    for (std::size_t i = 1; i < logs_.size(); ++i) {
      total += std::sqrt(weights_[i]) / a1 * std::exp(-sigma * (logs_[i] - logs_.front()));
    }
    return kInvPi * (total + tail_bound_beyond_head(sigma) / a1);
  }

 protected:
  // sum_{i} a_i^2 q(log p_i) exp(-s (log p_i - c)) over the head.
  double head_sum(double s, double c, const LogPoly& q) const {
    double total = 0.0;
    for (std::size_t i = 0; i < logs_.size(); ++i) {
      total += weights_[i] * eval(q, logs_[i]) * std::exp(-s * (logs_[i] - c));
    }
    return total;
  }
  // Same sum over the elements beyond the head.
  virtual BoundedValue tail_sum(double s, double c, const LogPoly& q) const = 0;
  // Upper bound on sum_{p beyond head} a_p p_1^sigma p^{-sigma}.
  virtual double tail_bound_beyond_head(double sigma) const = 0;

  std::vector<double> logs_;
  std::vector<double> weights_;  // a_p^2
};

// Primes: Moebius inversion P(s) = sum mu(k)/k log zeta(ks) below the
// crossover, direct central sums above it.
class PrimeSet final : public HeadSet {
 public:
  PrimeSet() : HeadSet(SetKind::primes, -1.0, "primes") {
    for (std::uint32_t p : generate_primes(kDirectLimit)) {
      logs_.push_back(std::log(static_cast<double>(p)));
      weights_.push_back(1.0);
    }
  }

  std::array<BoundedValue, 3> log_sums(double s) const override {
    require_s(s);
    if (s >= kCrossover) return HeadSet::log_sums(s);
    std::array<BoundedValue, 3> out{};
    const ZetaJet jet = zeta_jet(s);
    const double z0 = jet.value.value;
    out[0] = {std::log(z0), jet.value.error_bound / z0};
    out[1] = {-jet.first.value / z0, (jet.first.error_bound + std::abs(jet.first.value / z0) * jet.value.error_bound) / z0};
    const BoundedValue l1 = log_zeta_second_derivative_bounded(s);
    out[2] = l1;
    for (int k = 2;; ++k) {
      const double ks = k * s;
      if (ks > 64.0) break;
      const int mu = moebius(static_cast<std::uint64_t>(k));
      if (mu == 0) continue;
      const ZetaEvaluation rest = zeta_tail(ks, 0, 2);      // zeta(ks) - 1
      const ZetaEvaluation rest1 = zeta_tail(ks, 1, 2);     // zeta'(ks)
      const BoundedValue lk = log_zeta_second_derivative_bounded(ks);
      const double zk = 1.0 + rest.value;
      out[0].value += mu * std::log1p(rest.value) / k;
      out[0].error_bound += rest.error_bound / k;
      out[1].value -= mu * rest1.value / zk;
      out[1].error_bound += (rest1.error_bound + std::abs(rest1.value) * rest.error_bound) / zk;
      out[2].value += mu * k * lk.value;
      out[2].error_bound += k * lk.error_bound;
    }
    // Omitted k: each |term| is below 2 k (log 2)^2 2^{-ks} <= 2^{-60}.
    for (auto& v : out) v.error_bound += std::ldexp(std::abs(v.value) + 1.0, -58);
    return out;
  }

  double log_second_derivative(double s) const override {
    require_s(s);
    if (s >= kCrossover) return HeadSet::log_second_derivative(s);
    const auto sums = log_sums(s);
    const double r1 = sums[1].value / sums[0].value;
    const double r2 = sums[2].value / sums[0].value;
    const double v = r2 - r1 * r1;
    if (!(v > 0.0)) throw PrecisionError("(log P)'' lost positivity at s = " + std::to_string(s));
    return v;
  }

  double tail_bound(double sigma) const override {
    // sum_{p >= 3} (p/2)^{-sigma} <= (2/3)^sigma (1 + 3/(sigma - 1)).
    return kInvPi * std::pow(2.0 / 3.0, sigma) * (1.0 + 3.0 / (sigma - 1.0));
  }

 protected:
  // Beyond the sieve limit X: sum_{n > X} (log n)^j n^{-s} <= Integral_X^inf, a bound only.
  BoundedValue tail_sum(double s, double c, const LogPoly& q) const override {
    const double x = static_cast<double>(kDirectLimit);
    double bound = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (q[static_cast<std::size_t>(j)] != 0.0) {
        bound += std::abs(q[static_cast<std::size_t>(j)]) * log_power_integral(j, s, x);
      }
    }
    return {0.0, bound * std::exp(s * c)};
  }
  double tail_bound_beyond_head(double) const override { return 0.0; }

 private:
  static constexpr std::uint64_t kDirectLimit = 100000;
  static constexpr double kCrossover = 8.0;
};

class ListSet final : public HeadSet {
 public:
  ListSet(std::vector<double> elements, std::vector<double> weights, double alpha)
      : HeadSet(SetKind::explicit_list, alpha, "explicit-list") {
    if (elements.empty()) throw DomainError("explicit list is empty");
    if (!weights.empty() && weights.size() != elements.size()) {
      throw DomainError("explicit list: weight count differs from element count");
    }
    if (!(elements.front() >= 1.0)) throw DomainError("explicit list elements must be >= 1");
    for (std::size_t i = 1; i < elements.size(); ++i) {
      if (!(elements[i] > elements[i - 1])) throw DomainError("explicit list must be strictly increasing");
    }
    double weight_total = 0.0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const double a = weights.empty() ? 1.0 : weights[i];
      if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("explicit list weights must be finite and >= 0");
      weight_total += a * a;
      if (a == 0.0) continue;
      logs_.push_back(std::log(elements[i]));
      weights_.push_back(a * a);
    }
    if (logs_.empty()) throw DomainError("explicit list has no element with positive weight");
    mean_weight_ = weight_total / static_cast<double>(elements.size());
    last_ = elements.back();
    fit_ = fit_counting(elements, alpha);
  }

  std::optional<CountingFit> fit() const override { return fit_; }

 protected:
  // Model tail: density scale * [(log x)^alpha + alpha (log x)^{alpha-1}] beyond the last element.
  BoundedValue tail_sum(double s, double c, const LogPoly& q) const override {
    if (!(last_ > 1.0)) return {0.0, 0.0};
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double cj = q[static_cast<std::size_t>(j)];
      if (cj == 0.0) continue;
      double piece = log_power_integral(alpha + j, s, last_);
      if (alpha != 0.0) piece += alpha * log_power_integral(alpha + j - 1.0, s, last_);
      total += cj * piece;
    }
    total *= mean_weight_ * fit_.scale;
    const double scaled = total > 0.0 ? std::exp(std::log(total) + s * c) : total * std::exp(s * c);
    // The continuation is a model, so its whole size is the uncertainty.
    return {scaled, std::abs(scaled)};
  }
  double tail_bound_beyond_head(double sigma) const override {
    if (!(sigma > 1.0)) return std::numeric_limits<double>::infinity();
    if (!(last_ > 1.0)) return 0.0;
    double piece = log_power_integral(alpha, sigma, last_);
    if (alpha != 0.0) piece += std::abs(alpha) * log_power_integral(alpha - 1.0, sigma, last_);
    return std::sqrt(mean_weight_) * fit_.scale * piece * std::exp(sigma * logs_.front());
  }

 private:
  static CountingFit fit_counting(const std::vector<double>& elements, double alpha) {
    // Least squares of i against M(p_i) = p_i (log p_i)^alpha over p_i >= 3.
    double num = 0.0;
    double den = 0.0;
    std::size_t points = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] < 3.0) continue;
      const double m = elements[i] * std::pow(std::log(elements[i]), alpha);
      num += static_cast<double>(i + 1) * m;
      den += m * m;
      ++points;
    }
    if (points == 0) {
      const double p = std::max(elements.back(), 3.0);
      return {static_cast<double>(elements.size()) / (p * std::pow(std::log(p), alpha)), 0.0, 0};
    }
    const double scale = num / den;
    double ss = 0.0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i] < 3.0) continue;
      const double m = elements[i] * std::pow(std::log(elements[i]), alpha);
      const double r = static_cast<double>(i + 1) / (scale * m) - 1.0;
      ss += r * r;
    }
    return {scale, std::sqrt(ss / static_cast<double>(points)), points};
  }

  double mean_weight_ = 1.0;
  double last_ = 1.0;
  CountingFit fit_{};
};

// p_n = n (log(n + 2))^beta: explicit head, Euler-Maclaurin tail.
class GeneratorSet final : public HeadSet {
 public:
  explicit GeneratorSet(double beta) : HeadSet(SetKind::generator, -beta, "generator"), beta_(beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("generator exponent beta must be >= 0");
    std::ostringstream os;
    os << "generator(beta=" << beta << ")";
    name = os.str();
    for (std::size_t n = 1; n <= kHead; ++n) {
      logs_.push_back(log_p(static_cast<double>(n)));
      weights_.push_back(1.0);
    }
  }

 protected:
  BoundedValue tail_sum(double s, double c, const LogPoly& q) const override {
    const auto f = [&](double x) { return eval(q, log_p(x)) * std::exp(-s * (log_p(x) - c)); };
    const double a = static_cast<double>(kHead);
    // sum_{n > a} f(n) = Integral_a^inf f - f(a)/2 - f'(a)/12 + f'''(a)/720 - ...
    const double d1_step = 1e-3 * a;
    const double d1 = (f(a + d1_step) - f(a - d1_step)) / (2.0 * d1_step);
    const double d3_step = 5e-2 * a;
    const double d3 = (f(a + 2 * d3_step) - 2 * f(a + d3_step) + 2 * f(a - d3_step) - f(a - 2 * d3_step)) /
                      (2.0 * d3_step * d3_step * d3_step);
    const BoundedValue integral = tail_integral(s, c, q);
    return {integral.value - 0.5 * f(a) - d1 / 12.0, integral.error_bound + 2.0 * std::abs(d3) / 720.0};
  }

  double tail_bound_beyond_head(double sigma) const override {
    // p_n >= n, so sum_{n > N} p_n^{-sigma} <= N^{1 - sigma}/(sigma - 1).
    if (!(sigma > 1.0)) return std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(kHead);
    return std::exp(sigma * logs_.front() + (1.0 - sigma) * std::log(n)) / (sigma - 1.0);
  }

 private:
  static constexpr std::size_t kHead = 4096;
  static constexpr int kMaxPanels = 200;

  double log_p(double x) const { return std::log(x) + beta_ * std::log(std::log(x + 2.0)); }

  // log p - v as a function of v = log x; kept apart from v so that
  // v - s (log p - c) does not cancel at large v.
  double log_excess_of_v(double v) const { return beta_ * std::log(v + std::log1p(2.0 * std::exp(-v))); }

  // Integral_a^inf q(log p(x)) exp(-s (log p(x) - c)) dx on doubling panels in v = log x.
  BoundedValue tail_integral(double s, double c, const LogPoly& q) const {
    const auto g = [&](double v) {
      const double excess = log_excess_of_v(v);
      return eval(q, v + excess) * std::exp(-(s - 1.0) * v - s * (excess - c));
    };
    double lo = std::log(static_cast<double>(kHead));
    double total = 0.0;
    double error = 0.0;
    for (int panel = 0; panel < kMaxPanels; ++panel) {
      const double hi = 2.0 * lo;
      const double rough = integrate_adaptive(g, lo, hi, {std::numeric_limits<double>::infinity(), 0}).value;
      const double tol = std::max(1e-13 * std::abs(rough), 1e-17 * std::abs(total)) + std::numeric_limits<double>::min();
      const QuadratureResult r = integrate_adaptive(g, lo, hi, {tol, 4000});
      total += r.value;
      error += r.abs_err_estimate;
      if ((s - 1.0) * lo > 50.0 && std::abs(r.value) <= 1e-17 * std::abs(total)) return {total, error};
      lo = hi;
    }
    throw PrecisionError("generator tail integral did not converge at s = " + std::to_string(s));
  }

  double beta_;
};

}  // namespace

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::integers:
      return "integers";
    case SetKind::primes:
      return "primes";
    case SetKind::weighted:
      return "weighted";
    case SetKind::explicit_list:
      return "explicit-list";
    case SetKind::generator:
      return "generator";
  }
  return "unknown";
}

FrequencySet::FrequencySet(std::shared_ptr<const detail::SetSource> source) : source_(std::move(source)) {}

FrequencySet FrequencySet::integers() {
  static const auto source = std::make_shared<const IntegerSet>();
  return FrequencySet(source);
}

FrequencySet FrequencySet::primes() {
  static const auto source = std::make_shared<const PrimeSet>();
  return FrequencySet(source);
}

FrequencySet FrequencySet::divisor_weighted(int k) {
  if (k < 1 || k > 16) throw DomainError("divisor weighting needs 1 <= k <= 16");
  if (k == 1) return integers();
  return FrequencySet(std::make_shared<const DivisorSet>(k));
}

FrequencySet FrequencySet::explicit_list(std::vector<double> elements, std::vector<double> weights, double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  return FrequencySet(std::make_shared<const ListSet>(std::move(elements), std::move(weights), alpha));
}

FrequencySet FrequencySet::from_file(const std::string& path, double alpha) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open frequency list " + path);
  std::vector<double> elements;
  std::vector<double> weights;
  bool any_weight = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double p = 0.0;
    if (!(fields >> p)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw DomainError(path + ":" + std::to_string(line_no) + ": expected a number");
      }
      continue;
    }
    double a = 1.0;
    if (fields >> a) {
      any_weight = true;
    } else if (!fields.eof()) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": malformed weight");
    }
    std::string extra;
    if (fields.clear(), fields >> extra) throw DomainError(path + ":" + std::to_string(line_no) + ": trailing text");
    elements.push_back(p);
    weights.push_back(a);
  }
  if (!any_weight) weights.clear();
  return explicit_list(std::move(elements), std::move(weights), alpha);
}

FrequencySet FrequencySet::generator(double beta) { return FrequencySet(std::make_shared<const GeneratorSet>(beta)); }

SetKind FrequencySet::kind() const { return source_->kind; }
double FrequencySet::alpha() const { return source_->alpha; }
const std::string& FrequencySet::name() const { return source_->name; }
std::optional<CountingFit> FrequencySet::counting_fit() const { return source_->fit(); }
std::array<BoundedValue, 3> FrequencySet::log_sums(double s) const {
  require_s(s);
  return source_->log_sums(s);
}
double FrequencySet::log_second_derivative(double s) const {
  require_s(s);
  return source_->log_second_derivative(s);
}
double FrequencySet::tail_bound(double sigma) const { return source_->tail_bound(sigma); }

}  // namespace dzeros
