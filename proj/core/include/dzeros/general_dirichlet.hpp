#pragma once

#include <optional>
#include <string>

#include "dzeros/expected_zeros.hpp"
#include "dzeros/frequency_set.hpp"
#include "dzeros/quadrature.hpp"
#include "dzeros/zeta.hpp"

namespace dzeros {

/// Z^{(k)}(s) = (-1)^k sum a_p^2 (log p)^k p^{-s}, k in {0, 1, 2}, s > 1.
/// PrecisionError when the certified bound exceeds tol.
ZetaEvaluation zeta_alpha(double s, const FrequencySet& set, int k, double tol = 1e-10);

KacModel kac_model(const FrequencySet& set);

/// (1/pi) sqrt((log Z)''(2 sigma)) for sigma > 1/2.
double kac_integrand_alpha(double sigma, const FrequencySet& set);

/// Expected number of real zeros of sum a_p xi_p p^{-sigma} on [T, U].
QuadratureResult expected_zero_count_alpha(const RealInterval& interval, const FrequencySet& set,
                                           double tol = kDefaultQuadratureTol);

enum class Regime { supercritical, critical, subcritical };

const char* to_string(Regime regime);

/// Leading behaviour of E N(T, infinity) as T -> 1/2, from the growth
/// exponent alpha of the counting function.
struct RegimePrediction {
  Regime regime;
  /// "log(1/t)" or "sqrt(log(1/t))" with t = T - 1/2; empty when unknown.
  std::string leading_form;
  /// Coefficient of leading_form; absent below the critical exponent.
  std::optional<double> leading_constant;
};

RegimePrediction regime_prediction(double alpha);

}  // namespace dzeros
