#include "dzeros/gamma.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "dzeros/errors.hpp"

namespace dzeros {

double gamma_function(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_function: x must be positive (got " + std::to_string(x) + ")");
  return boost::math::tgamma(x);
}

double upper_incomplete_gamma(double a, double x) {
  if (!(x > 0.0)) throw DomainError("upper_incomplete_gamma: x must be positive");
  if (a > 0.0) return boost::math::tgamma(a, x);
  // Step up to b = a + m in [0, 1), then recur down with
  // Gamma(b - 1, x) = (Gamma(b, x) - x^{b-1} e^{-x}) / (b - 1).
  const int m = static_cast<int>(std::ceil(-a));
  double b = a + m;
  double value = b == 0.0 ? boost::math::expint(1, x) : boost::math::tgamma(b, x);
  for (int j = 0; j < m; ++j) {
    value = (value - std::pow(x, b - 1.0) * std::exp(-x)) / (b - 1.0);
    b -= 1.0;
  }
  return value;
}

double log_power_integral(double g, double s, double X) {
  if (!(s > 1.0)) throw DomainError("log_power_integral: s must exceed 1");
  if (!(X > 1.0)) throw DomainError("log_power_integral: lower limit must exceed 1");
  const double scale = s - 1.0;
  return std::pow(scale, -(g + 1.0)) * upper_incomplete_gamma(g + 1.0, scale * std::log(X));
}

double integral_J(double g, double sigma) {
  if (!(sigma > 0.5)) throw DomainError("integral_J: sigma must exceed 1/2");
  return log_power_integral(g, 2.0 * sigma, 2.0);
}

}  // namespace dzeros
