#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

/// Compensated sum.
class KahanSum {
 public:
  void add(long double x) {
    const long double y = x - c_;
    const long double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  long double value() const { return sum_; }

 private:
  long double sum_ = 0.0L;
  long double c_ = 0.0L;
};

/// Integral_N^inf (log x)^k x^{-s} dx for k in {0, 1, 2}.
inline double log_power_tail(double s, int k, double N) {
  const double a = s - 1.0;
  const double L = std::log(N);
  const double base = std::pow(N, -a);
  switch (k) {
    case 0:
      return base / a;
    case 1:
      return base * (L / a + 1.0 / (a * a));
    default:
      return base * (L * L / a + 2.0 * L / (a * a) + 2.0 / (a * a * a));
  }
}

/// sum_{n>=1} (log n)^k n^{-s}: partial sum to N plus the integral tail with
/// the trapezoid end correction.
inline double log_power_series(double s, int k, std::uint64_t N) {
  KahanSum sum;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    sum.add(std::pow(ln, k) * std::exp(-s * ln));
  }
  const double fN = std::pow(std::log(static_cast<double>(N)), k) * std::pow(static_cast<double>(N), -s);
  return static_cast<double>(sum.value()) + log_power_tail(s, k, static_cast<double>(N)) - 0.5 * fN;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (composite[n]) continue;
    primes.push_back(static_cast<std::uint32_t>(n));
    for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = 1;
  }
  return primes;
}

/// sum_{n <= N} Lambda(n) log n n^{-s}, enumerating prime powers from a sieve.
inline double von_mangoldt_log_sum(double s, std::uint64_t N) {
  KahanSum sum;
  for (std::uint32_t p : primes_up_to(N)) {
    const long double lp = std::log(static_cast<long double>(p));
    for (long double q = p; q <= static_cast<long double>(N); q *= p) {
      const long double lq = std::log(q);
      sum.add(lp * lq * std::exp(-s * lq));
    }
  }
  return static_cast<double>(sum.value());
}

/// Euler's constant: H_m - log m at m = 2^j m0, Richardson in 1/m.
inline double euler_gamma() {
  constexpr int levels = 6;
  std::vector<std::vector<long double>> table(levels);
  std::uint64_t m = 1000;
  for (int j = 0; j < levels; ++j, m *= 2) {
    long double h = 0.0L;
    for (std::uint64_t k = 1; k <= m; ++k) h += 1.0L / static_cast<long double>(k);
    table[j].push_back(h - std::log(static_cast<long double>(m)));
    for (int i = 1; i <= j; ++i) {
      const long double f = std::ldexp(1.0L, i);
      table[j].push_back((f * table[j][i - 1] - table[j - 1][i - 1]) / (f - 1.0L));
    }
  }
  return static_cast<double>(table.back().back());
}

/// gamma_1 = lim sum_{k<=m} log k / k - (log m)^2 / 2, with the leading
/// end corrections f(m)/2 + f'(m)/12 removed, f(x) = log x / x.
inline double stieltjes_gamma1() {
  constexpr std::uint64_t m = 200000;
  KahanSum sum;
  for (std::uint64_t k = 2; k <= m; ++k) {
    const long double lk = std::log(static_cast<long double>(k));
    sum.add(lk / static_cast<long double>(k));
  }
  const long double x = m;
  const long double L = std::log(x);
  const long double f = L / x;
  const long double df = (1.0L - L) / (x * x);
  return static_cast<double>(sum.value() - L * L / 2.0L - f / 2.0L - df / 12.0L);
}

}  // namespace oracle
