#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dzeros/series.hpp"
#include "dzeros/symbolic.hpp"
#include "dzeros/zeta.hpp"

namespace dzeros {

/// Default truncation order for the logarithmic expansion.
inline constexpr int kDefaultExpansionOrder = 10;

/// Coefficients of E N(T, inf) = log(1/t)/(2 pi) + c0 + sum_{n>=2} c_n t^n,
/// t = T - 1/2.
struct ExpansionCoefficients {
  /// Unset until calibrated against quadrature.
  std::optional<double> c0;
  /// c[n] for n = 0..order; c[0] mirrors c0 (NaN while unset), c[1] = 0.
  std::vector<double> c;
  /// pi * c_n as a polynomial in the Stieltjes constants, where derived
  /// symbolically; empty otherwise.
  std::vector<StieltjesPolynomial> symbolic;

  int order() const { return static_cast<int>(c.size()) - 1; }
  /// c_n / pi as text, e.g. "(2*g1 + g0^2)/(2*pi)"; empty when unavailable.
  std::string symbolic_form(int n) const;
  /// sum_{n=2}^{order} c_n t^n.
  double correction(double t) const;
};

/// Laurent series of zeta about s = 1 from gamma_0..gamma_{cap}:
/// 1/x + sum_n (-1)^n gamma_n x^n / n!, known through x^cap.
template <class R>
TruncatedSeries<R> zeta_laurent_series(std::span<const R> stieltjes) {
  std::vector<R> coefs;
  coefs.push_back(SeriesRing<R>::from_rational(Rational(1)));
  Rational factorial = 1;
  for (std::size_t n = 0; n < stieltjes.size(); ++n) {
    if (n > 0) factorial *= static_cast<int>(n);
    const Rational sign_over_fact = Rational(n % 2 == 0 ? 1 : -1) / factorial;
    coefs.push_back(stieltjes[n] * SeriesRing<R>::from_rational(sign_over_fact));
  }
  return TruncatedSeries<R>(-1, std::move(coefs));
}

/// A(x) with (log zeta)''(1 + x) = (1 + A(x)) / x^2, known through x^order_cap.
/// Uses gamma_0..gamma_{order_cap-1}.
template <class R>
TruncatedSeries<R> derive_A_series_generic(std::span<const R> stieltjes, int order_cap) {
  if (order_cap < 2) throw DomainError("derive_A_series: order cap must be at least 2");
  if (stieltjes.size() < static_cast<std::size_t>(order_cap)) {
    throw PrecisionError("derive_A_series: order cap " + std::to_string(order_cap) + " needs " +
                         std::to_string(order_cap) + " Stieltjes constants, have " +
                         std::to_string(stieltjes.size()));
  }
  const auto zeta = zeta_laurent_series<R>(stieltjes.first(static_cast<std::size_t>(order_cap)));
  const auto log_derivative = zeta.derivative() * zeta.reciprocal();
  const auto second = log_derivative.derivative();
  const auto one = TruncatedSeries<R>::constant(SeriesRing<R>::from_rational(Rational(1)), second.order_cap() + 2);
  return (second.shifted(2) - one).truncated(order_cap);
}

TruncatedSeries<double> derive_A_series(const StieltjesTable& stieltjes, int order_cap);

/// A(x) over the Stieltjes variables g0..g{order_cap-1}.
TruncatedSeries<StieltjesPolynomial> derive_A_series_symbolic(int order_cap);

/// c_n for 2 <= n <= order from sqrt(1 + A); c0 is left unset.
ExpansionCoefficients derive_expansion_coefficients(const TruncatedSeries<double>& A, int order);

/// Numeric coefficients from the cached Stieltjes table together with the
/// symbolic polynomials pi * c_n.
ExpansionCoefficients default_expansion_coefficients(int order = kDefaultExpansionOrder);

/// pi * c_n for n = 0..order as Stieltjes polynomials (entries 0, 1 are zero).
std::vector<StieltjesPolynomial> expansion_polynomials(int order);

}  // namespace dzeros
