#include "dzeros/expansion.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace dzeros {
namespace {

// pi * c_n = -b_n 2^{n-1} / n, from integrating (1/(2 sigma - 1)) b_n (2 sigma - 1)^n.
template <class R>
std::vector<R> pi_times_coefficients(const TruncatedSeries<R>& A, int order) {
  if (order < 0) throw DomainError("expansion order must be nonnegative");
  if (order > A.order_cap()) {
    throw DomainError("expansion order " + std::to_string(order) + " exceeds the A-series order cap " +
                      std::to_string(A.order_cap()));
  }
  const auto one = TruncatedSeries<R>::constant(SeriesRing<R>::from_rational(Rational(1)), A.order_cap());
  const auto root = (one + A).sqrt();
  std::vector<R> out;
  for (int n = 0; n <= order; ++n) {
    if (n < 2) {
      out.push_back(SeriesRing<R>::from_rational(Rational(0)));
      continue;
    }
    Rational scale = Rational(-1, n);
    for (int i = 1; i < n; ++i) scale *= 2;
    out.push_back(root.coefficient(n) * SeriesRing<R>::from_rational(scale));
  }
  return out;
}

}  // namespace

std::string ExpansionCoefficients::symbolic_form(int n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= symbolic.size()) return {};
  return symbolic[static_cast<std::size_t>(n)].to_string_over_pi();
}

double ExpansionCoefficients::correction(double t) const {
  double total = 0.0;
  for (int n = order(); n >= 2; --n) total = (total + c[static_cast<std::size_t>(n)]) * t;
  return total * t;
}

TruncatedSeries<double> derive_A_series(const StieltjesTable& stieltjes, int order_cap) {
  return derive_A_series_generic<double>(std::span<const double>(stieltjes.values), order_cap);
}

TruncatedSeries<StieltjesPolynomial> derive_A_series_symbolic(int order_cap) {
  std::vector<StieltjesPolynomial> vars;
  for (int n = 0; n < order_cap; ++n) vars.push_back(StieltjesPolynomial::variable(n));
  return derive_A_series_generic<StieltjesPolynomial>(std::span<const StieltjesPolynomial>(vars), order_cap);
}

ExpansionCoefficients derive_expansion_coefficients(const TruncatedSeries<double>& A, int order) {
  ExpansionCoefficients out;
  out.c = pi_times_coefficients(A, order);
  for (auto& v : out.c) v /= std::numbers::pi;
  out.c[0] = std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::vector<StieltjesPolynomial> expansion_polynomials(int order) {
  const int cap = std::max(order, 2);
  return pi_times_coefficients(derive_A_series_symbolic(cap), order);
}

ExpansionCoefficients default_expansion_coefficients(int order) {
  const StieltjesTable& table = cached_stieltjes();
  ExpansionCoefficients out =
      derive_expansion_coefficients(derive_A_series(table, std::max(order, 2)), order);
  out.symbolic = expansion_polynomials(order);
  return out;
}

}  // namespace dzeros
