#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dzeros/euler_maclaurin.hpp"

namespace dzeros {

enum class SetKind { integers, primes, weighted, explicit_list, generator };

const char* to_string(SetKind kind);

/// Least-squares fit of pi(x) ~ scale * x (log x)^alpha over a finite list.
struct CountingFit {
  double scale;
  /// RMS of pi(p)/(scale * p (log p)^alpha) - 1 over the fitted points.
  double rms_relative_deviation;
  std::size_t points;
};

namespace detail {
struct SetSource;
}

/// Frequencies p_1 < p_2 < ... with weights a_p >= 0, defining
/// Z(s) = sum_p a_p^2 p^{-s}.
class FrequencySet {
 public:
  static FrequencySet integers();
  static FrequencySet primes();
  /// a_n^2 = tau_k(n), so Z = zeta^k and alpha = k - 1.
  static FrequencySet divisor_weighted(int k);
  static FrequencySet tau_weighted() { return divisor_weighted(2); }
  /// Finite list continued beyond its last element by the density
  /// scale * d/dx[x (log x)^alpha], scale fitted to the list.
  static FrequencySet explicit_list(std::vector<double> elements, std::vector<double> weights, double alpha);
  /// Text file, one "element [weight]" per line; '#' starts a comment.
  static FrequencySet from_file(const std::string& path, double alpha);
  /// p_n = n (log(n + 2))^beta, so alpha = -beta.
  static FrequencySet generator(double beta);

  SetKind kind() const;
  double alpha() const;
  const std::string& name() const;
  std::optional<CountingFit> counting_fit() const;

  /// sum a_p^2 (log p)^j p^{-s} for j = 0, 1, 2 (unsigned), s > 1.
  std::array<BoundedValue, 3> log_sums(double s) const;
  /// (log Z)''(s) > 0.
  double log_second_derivative(double s) const;
  /// Upper bound on (1/pi) Integral_sigma^inf sqrt((log Z)''(2x)) dx.
  double tail_bound(double sigma) const;

 private:
  explicit FrequencySet(std::shared_ptr<const detail::SetSource> source);
  std::shared_ptr<const detail::SetSource> source_;
};

}  // namespace dzeros
