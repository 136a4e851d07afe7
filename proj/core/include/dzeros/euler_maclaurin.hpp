#pragma once

#include <cstddef>
#include <vector>

namespace dzeros {

/// Term budget for a certified Euler-Maclaurin sum: `head` explicit terms
/// followed by `corrections` Bernoulli correction terms.
struct SummationBudget {
  std::size_t head = 16;
  int corrections = 10;
};

/// A summed value together with a rigorous bound on its absolute error.
struct BoundedValue {
  double value = 0.0;
  double error_bound = 0.0;
};

inline constexpr int kMaxCorrections = 20;

/// B_{2j} / (2j)! for j = 1..kMaxCorrections, from exact rationals.
double bernoulli_over_factorial(int j);

/// Sum_{n >= start} (log n)^k n^{-a} for a > 1, evaluated as explicit terms
/// on [start, start + head) followed by the tail integral, the half endpoint
/// term and `corrections` Bernoulli terms. The bound covers the
/// Euler-Maclaurin remainder and floating-point rounding of every term.
BoundedValue log_power_sum(double a, int k, std::size_t start, SummationBudget budget);

/// Same sum for every power k = 0..max_k, sharing the n^{-a} and log n
/// evaluations. Results are indexed by k.
std::vector<BoundedValue> log_power_sums(double a, int max_k, std::size_t start,
                                         SummationBudget budget);

/// lim_m [ Sum_{n<=m} (log n)^k / n - (log m)^{k+1}/(k+1) ] in binary64.
BoundedValue regularised_harmonic_log_sum(int k, SummationBudget budget);

/// The same limit carried out in 113-bit binary floating point; the bound
/// includes the final rounding to double.
BoundedValue regularised_harmonic_log_sum_extended(int k, SummationBudget budget);

/// Integral_X^inf (log x)^i x^{-b} dx for b > 1, X >= 1, in closed form.
double log_power_tail_integral(double b, int i, double x);

}  // namespace dzeros
