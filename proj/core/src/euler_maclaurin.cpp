#include "dzeros/euler_maclaurin.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "dzeros/errors.hpp"

namespace dzeros {
namespace {

using boost::multiprecision::cpp_rational;
using Quad = boost::multiprecision::cpp_bin_float_quad;

// B_{2j}/(2j)!, j = 1..kMaxCorrections, as exact rationals (Akiyama-Tanigawa).
const std::array<cpp_rational, kMaxCorrections>& bernoulli_rationals() {
  static const std::array<cpp_rational, kMaxCorrections> table = [] {
    constexpr int kTop = 2 * kMaxCorrections;
    std::array<cpp_rational, kTop + 1> a;
    std::array<cpp_rational, kTop + 1> b;
    for (int m = 0; m <= kTop; ++m) {
      a[static_cast<std::size_t>(m)] = cpp_rational(1, m + 1);
      for (int j = m; j >= 1; --j) {
        const auto uj = static_cast<std::size_t>(j);
        a[uj - 1] = cpp_rational(j) * (a[uj - 1] - a[uj]);
      }
      b[static_cast<std::size_t>(m)] = a[0];
    }
    std::array<cpp_rational, kMaxCorrections> out;
    cpp_rational factorial = 1;
    for (int j = 1; j <= kMaxCorrections; ++j) {
      factorial *= (2 * j - 1) * (2 * j);
      out[static_cast<std::size_t>(j - 1)] = b[static_cast<std::size_t>(2 * j)] / factorial;
    }
    return out;
  }();
  return table;
}

template <class Real>
const std::array<Real, kMaxCorrections>& bernoulli_table() {
  static const std::array<Real, kMaxCorrections> table = [] {
    std::array<Real, kMaxCorrections> t;
    const auto& exact = bernoulli_rationals();
    for (std::size_t j = 0; j < t.size(); ++j) {
      if constexpr (std::is_same_v<Real, double>) {
        t[j] = static_cast<double>(exact[j]);
      } else {
        t[j] = Real(numerator(exact[j])) / Real(denominator(exact[j]));
      }
    }
    return t;
  }();
  return table;
}

// Neumaier compensated accumulator that also tracks Sum |x|.
template <class Real>
struct Accumulator {
  Real sum = 0;
  Real carry = 0;
  Real magnitude = 0;

  void add(const Real& x) {
    using std::abs;
    const Real t = sum + x;
    if (abs(sum) >= abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
    magnitude += abs(x);
  }
  Real value() const { return sum + carry; }
};

// Coefficients (in powers of L = log x) of x^{a+m} d^m/dx^m [x^{-a} L^k],
// one polynomial per derivative order m = 0..max_order.
template <class Real>
std::vector<std::vector<Real>> derivative_polynomials(const Real& a, int k, int max_order) {
  std::vector<std::vector<Real>> out;
  out.reserve(static_cast<std::size_t>(max_order) + 1);
  std::vector<Real> q(static_cast<std::size_t>(k) + 1, Real(0));
  q[static_cast<std::size_t>(k)] = 1;
  out.push_back(q);
  for (int m = 0; m < max_order; ++m) {
    std::vector<Real> next(q.size(), Real(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i] = -(a + m) * q[i];
      if (i + 1 < q.size()) next[i] += Real(static_cast<int>(i + 1)) * q[i + 1];
    }
    q = std::move(next);
    out.push_back(q);
  }
  return out;
}

template <class Real>
Real eval_poly(const std::vector<Real>& q, const Real& x) {
  Real r = 0;
  for (std::size_t i = q.size(); i-- > 0;) r = r * x + q[i];
  return r;
}

template <class Real>
Real tail_integral(const Real& b, int i, const Real& x) {
  using std::log;
  using std::pow;
  const Real l = log(x);
  const Real bm1 = b - 1;
  Real total = 0;
  Real falling = 1;  // i!/(i-j)!
  for (int j = 0; j <= i; ++j) {
    total += falling * pow(l, i - j) / pow(bm1, j + 1);
    falling *= (i - j);
  }
  return pow(x, 1 - b) * total;
}

template <class Real>
Real abs_poly_tail_integral(const std::vector<Real>& q, const Real& b, const Real& x) {
  using std::abs;
  Real total = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] != 0) total += abs(q[i]) * tail_integral(b, static_cast<int>(i), x);
  }
  return total;
}

// Adds the half endpoint term and the Bernoulli corrections for
// f(x) = x^{-a} (log x)^k at x = N; returns the remainder bound.
template <class Real>
Real add_endpoint_terms(Accumulator<Real>& acc, const Real& a, int k, const Real& big_n,
                        int corrections) {
  using std::abs;
  using std::log;
  using std::pow;
  const auto& bern = bernoulli_table<Real>();
  const auto polys = derivative_polynomials(a, k, 2 * corrections);
  const Real log_n = log(big_n);
  acc.add(pow(big_n, -a) * pow(log_n, k) / 2);
  for (int j = 1; j <= corrections; ++j) {
    const int m = 2 * j - 1;
    const Real deriv = pow(big_n, -a - m) * eval_poly(polys[static_cast<std::size_t>(m)], log_n);
    acc.add(-bern[static_cast<std::size_t>(j - 1)] * deriv);
  }
  const Real b = a + 2 * corrections;
  return abs(bern[static_cast<std::size_t>(corrections - 1)]) *
         abs_poly_tail_integral(polys[static_cast<std::size_t>(2 * corrections)], b, big_n);
}

template <class Real>
Real rounding_unit() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
BoundedValue regularised_sum_impl(int k, SummationBudget budget) {
  using std::log;
  using std::pow;
  Accumulator<Real> acc;
  const std::size_t end = 1 + budget.head;
  for (std::size_t n = 2; n < end; ++n) {
    const Real dn = static_cast<double>(n);
    acc.add(pow(log(dn), k) / dn);
  }
  if (k == 0) acc.add(Real(1));
  const Real big_n = static_cast<double>(end);
  acc.add(-pow(log(big_n), k + 1) / (k + 1));
  const Real truncation = add_endpoint_terms(acc, Real(1), k, big_n, budget.corrections);
  const Real rounding = Real(2 * k + 8) * rounding_unit<Real>() * acc.magnitude;
  const Real value = acc.value();
  const double rounded = static_cast<double>(value);
  using std::abs;
  const double conversion = static_cast<double>(abs(value - Real(rounded)));
  return {rounded, static_cast<double>(truncation + rounding) + conversion};
}

void check_budget(const SummationBudget& budget) {
  if (budget.corrections < 1 || budget.corrections > kMaxCorrections) {
    throw std::invalid_argument("Euler-Maclaurin corrections must lie in [1, 20]");
  }
}

}  // namespace

double bernoulli_over_factorial(int j) {
  if (j < 1 || j > kMaxCorrections) throw std::out_of_range("Bernoulli index out of range");
  return bernoulli_table<double>()[static_cast<std::size_t>(j - 1)];
}

double log_power_tail_integral(double b, int i, double x) { return tail_integral(b, i, x); }

std::vector<BoundedValue> log_power_sums(double a, int max_k, std::size_t start,
                                         SummationBudget budget) {
  check_budget(budget);
  if (!(a > 1.0)) throw DomainError("log_power_sums requires exponent > 1");
  if (start < 1) throw std::invalid_argument("summation must start at n >= 1");
  const std::size_t kcount = static_cast<std::size_t>(max_k) + 1;
  std::vector<Accumulator<double>> acc(kcount);
  const std::size_t end = start + budget.head;  // first index handled by the tail
  for (std::size_t n = start; n < end; ++n) {
    const double dn = static_cast<double>(n);
    const double base = std::pow(dn, -a);
    const double l = std::log(dn);
    double lp = 1.0;
    for (std::size_t k = 0; k < kcount; ++k) {
      acc[k].add(base * lp);
      lp *= l;
    }
  }
  const double big_n = static_cast<double>(end);
  std::vector<BoundedValue> out(kcount);
  for (std::size_t k = 0; k < kcount; ++k) {
    const int ki = static_cast<int>(k);
    acc[k].add(tail_integral(a, ki, big_n));
    const double truncation = add_endpoint_terms(acc[k], a, ki, big_n, budget.corrections);
    const double rounding = (2.0 * ki + 8.0) * rounding_unit<double>() * acc[k].magnitude;
    out[k] = {acc[k].value(), truncation + rounding};
  }
  return out;
}

BoundedValue log_power_sum(double a, int k, std::size_t start, SummationBudget budget) {
  return log_power_sums(a, k, start, budget)[static_cast<std::size_t>(k)];
}

BoundedValue regularised_harmonic_log_sum(int k, SummationBudget budget) {
  check_budget(budget);
  return regularised_sum_impl<double>(k, budget);
}

BoundedValue regularised_harmonic_log_sum_extended(int k, SummationBudget budget) {
  check_budget(budget);
  return regularised_sum_impl<Quad>(k, budget);
}

}  // namespace dzeros
