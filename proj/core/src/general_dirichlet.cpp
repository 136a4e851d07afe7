#include "dzeros/general_dirichlet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dzeros/errors.hpp"

namespace dzeros {

ZetaEvaluation zeta_alpha(double s, const FrequencySet& set, int k, double tol) {
  if (k < 0 || k > 2) throw DomainError("zeta_alpha: derivative order must be 0, 1 or 2");
  if (!(s > 1.0)) throw DomainError("zeta_alpha: s must exceed 1");
  const BoundedValue v = set.log_sums(s)[static_cast<std::size_t>(k)];
  if (!(v.error_bound <= tol)) {
    throw PrecisionError("zeta_alpha: error bound " + std::to_string(v.error_bound) + " at s = " + std::to_string(s) +
                         " exceeds " + std::to_string(tol));
  }
  return {s, k, k == 1 ? -v.value : v.value, v.error_bound};
}

KacModel kac_model(const FrequencySet& set) {
  if (set.kind() == SetKind::integers) return zeta_kac_model();
  return KacModel{
      [set](double h) {
        const double s = 1.0 + h;
        const double exact_h = s - 1.0;
        return exact_h * exact_h * set.log_second_derivative(s);
      },
      [set](double s) { return set.log_second_derivative(s); },
      [set](double sigma) { return set.tail_bound(sigma); },
  };
}

double kac_integrand_alpha(double sigma, const FrequencySet& set) {
  if (!(sigma > 0.5)) throw DomainError("kac_integrand_alpha: sigma must exceed 1/2");
  return std::numbers::inv_pi * std::sqrt(set.log_second_derivative(2.0 * sigma));
}

QuadratureResult expected_zero_count_alpha(const RealInterval& interval, const FrequencySet& set, double tol) {
  interval.validate();
  return integrate_kac(kac_model(set), interval, tol);
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::supercritical:
      return "supercritical";
    case Regime::critical:
      return "critical";
    case Regime::subcritical:
      return "subcritical";
  }
  return "unknown";
}

RegimePrediction regime_prediction(double alpha) {
  if (!std::isfinite(alpha)) throw DomainError("regime_prediction: alpha must be finite");
  if (alpha > -1.0) {
    return {Regime::supercritical, "log(1/t)", std::sqrt(1.0 + alpha) / (2.0 * std::numbers::pi)};
  }
  if (alpha == -1.0) return {Regime::critical, "sqrt(log(1/t))", std::numbers::inv_pi};
  return {Regime::subcritical, "", std::nullopt};
}

}  // namespace dzeros
