#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dzeros/errors.hpp"
#include "dzeros/expansion.hpp"
#include "dzeros/series.hpp"
#include "dzeros/zeta.hpp"
#include "oracles.hpp"

using namespace dzeros;

using QSeries = TruncatedSeries<Rational>;

namespace {

QSeries poly(std::vector<Rational> q) { return QSeries::from_rationals(q); }

QSeries x_series(int cap) { return QSeries::variable(cap); }

// Schoolbook product of coefficient lists truncated at cap.
std::vector<Rational> naive_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t cap) {
  std::vector<Rational> r(cap + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QSeries random_unit_series(std::mt19937& rng, int cap) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<Rational> q{Rational(1)};
  for (int i = 1; i <= cap; ++i) q.emplace_back(num(rng), den(rng));
  return poly(q);
}

}  // namespace

TEST_CASE("product, sum and truncation rule") {
  const QSeries a = poly({1, 1, 0, 0});
  const QSeries b = poly({1, -1, 0, 0});
  const QSeries p = a * b;
  CHECK(p == poly({1, 0, -1, 0}));
  const QSeries c3 = poly({1, 2, 3, 4});
  const QSeries c5 = poly({1, 1, 1, 1, 1, 1});
  CHECK((c3 * c5).order_cap() == 3);
  CHECK((c3 + c5).order_cap() == 3);
  CHECK_THROWS_AS(c3.coefficient(4), DomainError);
}

TEST_CASE("reciprocal") {
  const QSeries geo = poly({1, -1, 0, 0, 0, 0}).reciprocal();
  for (int n = 0; n <= 5; ++n) CHECK(geo.coefficient(n) == 1);
  CHECK_THROWS_AS(poly({0, 0, 0}).reciprocal(), DegeneracyError);
  // x(1 + x): reciprocal is a Laurent series with a simple pole.
  const QSeries lead_zero = poly({0, 1, 1, 0, 0});
  const QSeries inv = lead_zero.reciprocal();
  CHECK(inv.pole_order() == 1);
  CHECK(inv.coefficient(-1) == 1);
  CHECK(inv.coefficient(0) == -1);
  CHECK(inv.coefficient(1) == 1);
}

TEST_CASE("composition") {
  const int cap = 7;
  const QSeries geometric = series::geometric<Rational>(cap);
  CHECK(geometric.compose(x_series(cap)) == geometric);
  // sqrt(1 + z) at z = 2x + x^2 is exactly 1 + x.
  const QSeries root = series::sqrt1p<Rational>(cap).compose(poly({0, 2, 1, 0, 0, 0, 0, 0}));
  CHECK(root == poly({1, 1, 0, 0, 0, 0, 0, 0}));
  CHECK_THROWS_AS(geometric.compose(poly({1, 1, 0})), DomainError);
}

TEST_CASE("exp composed with log(1 + x) is 1 + x, against direct expansion") {
  const int cap = 9;
  const QSeries composed = series::exponential<Rational>(cap).compose(series::log1p<Rational>(cap));
  // Oracle: sum_k L^k / k! with L = sum (-1)^{n+1} x^n / n expanded by schoolbook products.
  std::vector<Rational> L(cap + 1, Rational(0));
  for (int n = 1; n <= cap; ++n) L[n] = Rational(n % 2 == 1 ? 1 : -1, n);
  std::vector<Rational> power{Rational(1)};
  std::vector<Rational> total(cap + 1, Rational(0));
  Rational factorial = 1;
  for (int k = 0; k <= cap; ++k) {
    if (k > 0) {
      power = naive_mul(power, L, cap);
      factorial *= k;
    }
    for (std::size_t i = 0; i < power.size(); ++i) total[i] += power[i] / factorial;
  }
  CHECK(composed == poly(total));
  CHECK(composed == poly({1, 1, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST_CASE("square root") {
  CHECK(poly({1, 2, 1, 0, 0}).sqrt() == poly({1, 1, 0, 0, 0}));
  CHECK(poly({1, 0, 0}).sqrt() == poly({1, 0, 0}));
  const QSeries s = poly({1, 1, 0, 0}).sqrt();
  CHECK(s.coefficient(0) == 1);
  CHECK(s.coefficient(1) == Rational(1, 2));
  CHECK(s.coefficient(2) == Rational(-1, 8));
  CHECK(s.coefficient(3) == Rational(1, 16));
  CHECK_THROWS_AS(poly({2, 1}).sqrt(), DomainError);
  CHECK_THROWS_AS(poly({0, 1}).sqrt(), DomainError);
}

TEST_CASE("property: sqrt(a)^2 = a and a * (1/a) = 1 exactly") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 25; ++trial) {
    const int cap = 3 + trial % 6;
    const QSeries a = random_unit_series(rng, cap);
    const QSeries r = a.sqrt();
    CHECK(r * r == a);
    const QSeries one = a * a.reciprocal();
    CHECK(one == QSeries::constant(Rational(1), cap));
  }
}

TEST_CASE("A series: vanishing constant and linear terms") {
  const auto symbolic = derive_A_series_symbolic(6);
  CHECK(symbolic.coefficient(0).is_zero());
  CHECK(symbolic.coefficient(1).is_zero());
  const auto numeric = derive_A_series(cached_stieltjes(), 10);
  CHECK(std::abs(numeric.coefficient(0)) < 1e-14);
  CHECK(std::abs(numeric.coefficient(1)) < 1e-14);
}

TEST_CASE("A series: x^2 coefficient against finite differences of (log zeta)''") {
  const auto A = derive_A_series(cached_stieltjes(), 10);
  const auto g = [](double h) {
    const double s = 1.0 + h;
    const double x = s - 1.0;
    return (x * x * log_zeta_second_derivative(s) - 1.0) / (x * x);
  };
  // g(h) = A2 + A3 h + O(h^2): eliminate the linear term.
  const double extrapolated = 2.0 * g(5e-3) - g(1e-2);
  CHECK(std::abs(A.coefficient(2) - extrapolated) < 1e-5);
}

TEST_CASE("A series errors") {
  CHECK_THROWS_AS(derive_A_series(cached_stieltjes(), 1), DomainError);
  StieltjesTable short_table = cached_stieltjes();
  short_table.values.resize(3);
  short_table.error_bounds.resize(3);
  CHECK_THROWS_AS(derive_A_series(short_table, 8), PrecisionError);
  const auto A = derive_A_series(cached_stieltjes(), 6);
  CHECK_THROWS_AS(derive_expansion_coefficients(A, 7), DomainError);
}

TEST_CASE("property: (1 + A(2 sigma)) / (2 sigma - 1)^2 reproduces (log zeta)''") {
  const auto A = derive_A_series(cached_stieltjes(), 10);
  for (double t : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
    const double s = 2.0 * (0.5 + t);
    const double h = s - 1.0;
    const double series_value = (1.0 + A.evaluate(h)) / (h * h);
    CHECK(std::abs(series_value / log_zeta_second_derivative(s) - 1.0) < 1e-6);
  }
}

TEST_CASE("c2 symbolic identity and numeric value") {
  const ExpansionCoefficients coeffs = default_expansion_coefficients(6);
  const StieltjesPolynomial g0 = StieltjesPolynomial::variable(0);
  const StieltjesPolynomial g1 = StieltjesPolynomial::variable(1);
  // pi * c2 = (2 g1 + g0^2) / 2.
  const StieltjesPolynomial expected = (StieltjesPolynomial(2) * g1 + g0 * g0) * StieltjesPolynomial(Rational(1, 2));
  CHECK(coeffs.symbolic[2] == expected);
  CHECK(coeffs.symbolic_form(2) == "(2*g1 + g0^2)/(2*pi)");
  const double g0v = oracle::euler_gamma();
  const double g1v = oracle::stieltjes_gamma1();
  const double closed_form = (2.0 * g1v + g0v * g0v) / (2.0 * std::numbers::pi);
  CHECK(std::abs(coeffs.c[2] - closed_form) < 1e-6);
  CHECK(std::abs(coeffs.c[2] - 0.0298489) < 1e-6);
  CHECK(coeffs.c[1] == 0.0);
  CHECK(coeffs.symbolic[1].is_zero());
  CHECK_FALSE(coeffs.c0.has_value());
}

TEST_CASE("symbolic and numeric routes agree for every coefficient") {
  const ExpansionCoefficients coeffs = default_expansion_coefficients(10);
  const auto& g = cached_stieltjes().values;
  for (int n = 2; n <= 10; ++n) {
    const double from_symbolic = coeffs.symbolic[static_cast<std::size_t>(n)].evaluate(g) / std::numbers::pi;
    CHECK(std::abs(from_symbolic - coeffs.c[static_cast<std::size_t>(n)]) < 1e-12);
  }
}

TEST_CASE("property: partial sums of order M and M + 2 differ by O(t^(M+1))") {
  const auto A = derive_A_series(cached_stieltjes(), 10);
  for (int M : {3, 5, 7}) {
    const ExpansionCoefficients low = derive_expansion_coefficients(A, M);
    const ExpansionCoefficients high = derive_expansion_coefficients(A, M + 2);
    std::vector<double> scaled;
    for (double t : {2e-2, 1e-2, 5e-3}) {
      scaled.push_back(std::abs(high.correction(t) - low.correction(t)) / std::pow(t, M + 1));
    }
    // The scaled gap settles to |c_{M+1}| as t shrinks.
    CHECK(std::abs(scaled[2] / scaled[1] - 1.0) < 0.1);
    CHECK(std::abs(scaled[2] / std::abs(high.c[static_cast<std::size_t>(M + 1)]) - 1.0) < 0.1);
  }
}
