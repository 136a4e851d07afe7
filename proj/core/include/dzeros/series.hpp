#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dzeros/errors.hpp"
#include "dzeros/symbolic.hpp"

namespace dzeros {

/// Coefficient-ring hooks used by TruncatedSeries.
template <class R>
struct SeriesRing;

template <>
struct SeriesRing<double> {
  static double from_rational(const Rational& q) { return static_cast<double>(q); }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_one(double x) { return x == 1.0; }
  static bool invertible(double x) { return x != 0.0; }
  static double inverse(double x) { return 1.0 / x; }
};

template <>
struct SeriesRing<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_one(const Rational& x) { return x == 1; }
  static bool invertible(const Rational& x) { return x != 0; }
  static Rational inverse(const Rational& x) { return Rational(1) / x; }
};

/// Only nonzero constants are units of the polynomial ring.
template <>
struct SeriesRing<StieltjesPolynomial> {
  static StieltjesPolynomial from_rational(const Rational& q) { return StieltjesPolynomial(q); }
  static bool is_zero(const StieltjesPolynomial& x) { return x.is_zero(); }
  static bool is_one(const StieltjesPolynomial& x) { return x == StieltjesPolynomial(1); }
  static bool invertible(const StieltjesPolynomial& x) { return x.is_constant() && !x.is_zero(); }
  static StieltjesPolynomial inverse(const StieltjesPolynomial& x) {
    return StieltjesPolynomial(Rational(1) / x.constant_term());
  }
};

/// Laurent series sum_{e = valuation}^{order_cap} c_e x^e about a fixed
/// center, with x = s - 1 throughout this library. Coefficients beyond
/// order_cap are unknown, not zero.
template <class R>
class TruncatedSeries {
 public:
  using Ring = SeriesRing<R>;

  TruncatedSeries(int valuation, std::vector<R> coefficients)
      : valuation_(valuation), coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) throw DomainError("TruncatedSeries needs at least one coefficient");
  }

  /// Constant c known exactly through x^order_cap.
  static TruncatedSeries constant(R c, int order_cap) {
    std::vector<R> coefs(static_cast<std::size_t>(order_cap) + 1, zero());
    coefs[0] = std::move(c);
    return TruncatedSeries(0, std::move(coefs));
  }

  /// x itself, known through x^order_cap.
  static TruncatedSeries variable(int order_cap) {
    std::vector<R> coefs(static_cast<std::size_t>(order_cap), zero());
    coefs[0] = one();
    return TruncatedSeries(1, std::move(coefs));
  }

  /// Builds sum_e q_e x^e from rationals, starting at x^0.
  static TruncatedSeries from_rationals(const std::vector<Rational>& q) {
    std::vector<R> coefs;
    coefs.reserve(q.size());
    for (const auto& v : q) coefs.push_back(Ring::from_rational(v));
    return TruncatedSeries(0, std::move(coefs));
  }

  int valuation() const { return valuation_; }
  int order_cap() const { return valuation_ + static_cast<int>(coefficients_.size()) - 1; }
  int pole_order() const { return std::max(0, -valuation_); }

  /// Coefficient of x^exponent; zero below the valuation.
  R coefficient(int exponent) const {
    if (exponent > order_cap()) {
      throw DomainError("coefficient of x^" + std::to_string(exponent) + " lies beyond order cap " +
                        std::to_string(order_cap()));
    }
    if (exponent < valuation_) return zero();
    return coefficients_[static_cast<std::size_t>(exponent - valuation_)];
  }

  const std::vector<R>& raw_coefficients() const { return coefficients_; }

  /// Drops leading zero coefficients so that the valuation is exact. A series
  /// with no nonzero known coefficient is left as a single zero at order_cap.
  TruncatedSeries normalized() const {
    std::size_t skip = 0;
    while (skip + 1 < coefficients_.size() && Ring::is_zero(coefficients_[skip])) ++skip;
    return TruncatedSeries(valuation_ + static_cast<int>(skip),
                           std::vector<R>(coefficients_.begin() + static_cast<std::ptrdiff_t>(skip),
                                          coefficients_.end()));
  }

  /// Restricts to exponents <= cap.
  TruncatedSeries truncated(int cap) const {
    if (cap >= order_cap()) return *this;
    if (cap < valuation_) return TruncatedSeries(cap, {zero()});
    return TruncatedSeries(valuation_, std::vector<R>(coefficients_.begin(),
                                                      coefficients_.begin() + (cap - valuation_ + 1)));
  }

  /// Multiplies by x^m.
  TruncatedSeries shifted(int m) const { return TruncatedSeries(valuation_ + m, coefficients_); }

  TruncatedSeries scaled(const R& factor) const {
    std::vector<R> coefs = coefficients_;
    for (auto& c : coefs) c = c * factor;
    return TruncatedSeries(valuation_, std::move(coefs));
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int lo = std::min(a.valuation_, b.valuation_);
    const int cap = std::min(a.order_cap(), b.order_cap());
    if (cap < lo) return TruncatedSeries(cap, {zero()});
    std::vector<R> coefs;
    coefs.reserve(static_cast<std::size_t>(cap - lo + 1));
    for (int e = lo; e <= cap; ++e) coefs.push_back(a.coefficient(e) + b.coefficient(e));
    return TruncatedSeries(lo, std::move(coefs));
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a) { return a.scaled(Ring::from_rational(-1)); }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

  /// Cauchy product. Known through min(cap_a + val_b, cap_b + val_a).
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int lo = a.valuation_ + b.valuation_;
    const int cap = std::min(a.order_cap() + b.valuation_, b.order_cap() + a.valuation_);
    std::vector<R> coefs(static_cast<std::size_t>(cap - lo + 1), zero());
    for (std::size_t n = 0; n < coefs.size(); ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        if (i >= a.coefficients_.size() || n - i >= b.coefficients_.size()) continue;
        coefs[n] += a.coefficients_[i] * b.coefficients_[n - i];
      }
    }
    return TruncatedSeries(lo, std::move(coefs));
  }

  /// 1/a. Leading exact zeros are skipped; the first nonzero coefficient must be a unit. The result has
  /// valuation -v and is known through order_cap - 2v.
  TruncatedSeries reciprocal() const {
    const TruncatedSeries a = normalized();
    const R& lead = a.coefficients_[0];
    if (!Ring::invertible(lead)) {
      throw DegeneracyError("reciprocal of a series whose leading coefficient is not invertible");
    }
    const R inv = Ring::inverse(lead);
    std::vector<R> r(a.coefficients_.size(), zero());
    r[0] = inv;
    for (std::size_t n = 1; n < r.size(); ++n) {
      R acc = zero();
      for (std::size_t i = 1; i <= n; ++i) acc += a.coefficients_[i] * r[n - i];
      r[n] = -(acc * inv);
    }
    return TruncatedSeries(-a.valuation_, std::move(r));
  }

  /// d/dx, known through order_cap - 1. A constant term differentiates away.
  TruncatedSeries derivative() const {
    const int cap = order_cap() - 1;
    int lo = valuation_ == 0 ? 0 : valuation_ - 1;
    if (cap < lo) return TruncatedSeries(cap, {zero()});
    std::vector<R> coefs;
    for (int e = lo; e <= cap; ++e) {
      const int source = e + 1;
      coefs.push_back(coefficient(source) * Ring::from_rational(Rational(source)));
    }
    return TruncatedSeries(lo, std::move(coefs));
  }

  /// Square root of a series with constant term 1 (valuation 0).
  TruncatedSeries sqrt() const {
    const TruncatedSeries a = valuation_ < 0 ? normalized() : *this;
    if (a.valuation_ != 0 || !Ring::is_one(a.coefficients_[0])) {
      throw DomainError("series square root requires constant term 1");
    }
    const R half = Ring::from_rational(Rational(1, 2));
    std::vector<R> r(a.coefficients_.size(), zero());
    r[0] = one();
    for (std::size_t n = 1; n < r.size(); ++n) {
      R acc = a.coefficients_[n];
      for (std::size_t i = 1; i < n; ++i) acc -= r[i] * r[n - i];
      r[n] = acc * half;
    }
    return TruncatedSeries(0, std::move(r));
  }

  /// outer(inner) by Horner's rule. outer must be a power series (valuation
  /// >= 0) and inner must have zero constant term.
  TruncatedSeries compose(const TruncatedSeries& inner_in) const {
    if (valuation_ < 0) throw DomainError("composition needs a power series on the outside");
    const TruncatedSeries inner = inner_in.normalized();
    const bool all_zero = inner.coefficients_.size() == 1 && Ring::is_zero(inner.coefficients_[0]);
    if (inner.valuation_ <= 0 && !all_zero) {
      throw DomainError("composition needs an inner series with zero constant term");
    }
    const int inner_val = all_zero ? inner.order_cap() + 1 : inner.valuation_;
    const int outer_cap = order_cap();
    // Terms beyond outer_cap contribute from x^{(outer_cap+1) * inner_val} on.
    const int cap = std::min(inner.order_cap(), (outer_cap + 1) * inner_val - 1);
    const TruncatedSeries w = inner.truncated(cap);
    TruncatedSeries acc = constant(coefficient(outer_cap), cap);
    for (int n = outer_cap - 1; n >= 0; --n) {
      acc = (acc * w).truncated(cap) + constant(coefficient(n), cap);
    }
    return acc.truncated(cap);
  }

  /// Evaluates the known part at x (double coefficients only).
  double evaluate(double x) const
    requires std::is_same_v<R, double>
  {
    double total = 0.0;
    for (std::size_t i = coefficients_.size(); i-- > 0;) total = total * x + coefficients_[i];
    double scale = 1.0;
    for (int e = 0; e < valuation_; ++e) scale *= x;
    for (int e = 0; e > valuation_; --e) scale /= x;
    return total * scale;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.valuation_ == b.valuation_ && a.coefficients_ == b.coefficients_;
  }

 private:
  static R zero() { return Ring::from_rational(Rational(0)); }
  static R one() { return Ring::from_rational(Rational(1)); }

  int valuation_;
  std::vector<R> coefficients_;
};

/// Named expansions about x = 0, each known through x^order_cap.
namespace series {

template <class R>
TruncatedSeries<R> geometric(int order_cap) {
  return TruncatedSeries<R>::from_rationals(std::vector<Rational>(static_cast<std::size_t>(order_cap) + 1, 1));
}

template <class R>
TruncatedSeries<R> exponential(int order_cap) {
  std::vector<Rational> q;
  Rational term = 1;
  for (int n = 0; n <= order_cap; ++n) {
    q.push_back(term);
    term /= (n + 1);
  }
  return TruncatedSeries<R>::from_rationals(q);
}

/// log(1 + x).
template <class R>
TruncatedSeries<R> log1p(int order_cap) {
  std::vector<Rational> q{0};
  for (int n = 1; n <= order_cap; ++n) q.push_back(Rational(n % 2 == 1 ? 1 : -1, n));
  return TruncatedSeries<R>::from_rationals(q);
}

/// sqrt(1 + x), binomial coefficients C(1/2, n).
template <class R>
TruncatedSeries<R> sqrt1p(int order_cap) {
  std::vector<Rational> q;
  Rational term = 1;
  for (int n = 0; n <= order_cap; ++n) {
    q.push_back(term);
    term *= Rational(1, 2) - n;
    term /= (n + 1);
  }
  return TruncatedSeries<R>::from_rationals(q);
}

}  // namespace series
}  // namespace dzeros
