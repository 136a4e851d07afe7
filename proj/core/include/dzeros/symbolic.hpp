#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dzeros {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial with rational coefficients in the Stieltjes variables
/// g0, g1, g2, ... (gamma_n is written g<n>).
class StieltjesPolynomial {
 public:
  /// Exponent vector; entry i is the power of g_i. Trailing zeros are trimmed.
  using Monomial = std::vector<int>;

  StieltjesPolynomial() = default;
  StieltjesPolynomial(int constant);  // NOLINT(google-explicit-constructor)
  StieltjesPolynomial(Rational constant);  // NOLINT(google-explicit-constructor)

  static StieltjesPolynomial variable(int index);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Highest variable index present, or -1 for a constant.
  int max_variable() const;
  int degree() const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  double evaluate(std::span<const double> gammas) const;

  /// "2*g1 + g0^2" with rational coefficients where needed.
  std::string to_string() const;
  /// Writes p / pi with a cleared common denominator: "(2*g1 + g0^2)/(2*pi)".
  std::string to_string_over_pi() const;

  StieltjesPolynomial& operator+=(const StieltjesPolynomial& rhs);
  StieltjesPolynomial& operator-=(const StieltjesPolynomial& rhs);
  StieltjesPolynomial& operator*=(const StieltjesPolynomial& rhs);

  friend StieltjesPolynomial operator+(StieltjesPolynomial a, const StieltjesPolynomial& b) { return a += b; }
  friend StieltjesPolynomial operator-(StieltjesPolynomial a, const StieltjesPolynomial& b) { return a -= b; }
  friend StieltjesPolynomial operator*(StieltjesPolynomial a, const StieltjesPolynomial& b) { return a *= b; }
  friend StieltjesPolynomial operator-(StieltjesPolynomial a) { return StieltjesPolynomial(0) - a; }
  friend bool operator==(const StieltjesPolynomial& a, const StieltjesPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(Monomial m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

}  // namespace dzeros
