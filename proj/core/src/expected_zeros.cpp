#include "dzeros/expected_zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dzeros/errors.hpp"
#include "dzeros/zeta.hpp"

namespace dzeros {
namespace {

constexpr double kInvPi = std::numbers::inv_pi;
constexpr double kMaxSigma = 2000.0;

double integer_sigma_max(const KacModel& model, double tail_target) {
  for (double sigma = 2.0; sigma <= kMaxSigma; sigma += 1.0) {
    if (model.tail_bound(sigma) <= tail_target) return sigma;
  }
  throw PrecisionError("expected zero count: tail bound never drops below " + std::to_string(tail_target));
}

}  // namespace

void RealInterval::validate() const {
  if (!(T > 0.5) || std::isnan(U) || !(U >= T) || !std::isfinite(T)) {
    throw DomainError("interval must satisfy 1/2 < T <= U (got T = " + std::to_string(T) +
                      ", U = " + std::to_string(U) + ")");
  }
}

double kac_integrand(double sigma) {
  if (!(sigma > 0.5)) throw DomainError("kac_integrand: sigma must exceed 1/2");
  return kInvPi * std::sqrt(log_zeta_second_derivative(2.0 * sigma));
}

const KacModel& zeta_kac_model() {
  static const KacModel model{
      [](double h) {
        const double s = 1.0 + h;
        const double exact_h = s - 1.0;  // keeps h^2 consistent with the rounded s
        return exact_h * exact_h * log_zeta_second_derivative(s);
      },
      [](double s) { return log_zeta_second_derivative(s); },
      // sqrt(Lambda(n) log n) <= log n, and (zeta(x) - 1) <= 2^{-x} (1 + 2/(x - 1)).
      [](double sigma) { return kInvPi * std::exp2(-sigma) * (1.0 + 2.0 / (sigma - 1.0)); },
  };
  return model;
}

QuadratureResult integrate_kac(const KacModel& model, const RealInterval& interval, double tol) {
  interval.validate();
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  QuadratureResult total;
  if (interval.T == interval.U) return total;

  // Beyond sigma_max the integrand is replaced by its certified tail bound.
  const double sigma_max = integer_sigma_max(model, 0.1 * tol);
  double upper = interval.U;
  if (upper > sigma_max) {
    upper = std::max(sigma_max, interval.T);
    total.abs_err_estimate += model.tail_bound(upper);
    if (upper == interval.T) return total;
  }

  const QuadratureOptions options{0.45 * tol, 2000};
  if (interval.T < 1.0) {
    const double h_lo = 2.0 * interval.T - 1.0;
    const double h_hi = std::min(2.0 * upper - 1.0, 1.0);
    const auto in_u = [&model](double u) {
      return 0.5 * kInvPi * std::sqrt(model.scaled_near_pole(std::exp(-u)));
    };
    const QuadratureResult near = integrate_adaptive(in_u, -std::log(h_hi), -std::log(h_lo), options);
    total.value += near.value;
    total.abs_err_estimate += near.abs_err_estimate;
    total.subdivisions += near.subdivisions;
  }
  if (upper > 1.0) {
    const double lo = std::max(interval.T, 1.0);
    const auto in_sigma = [&model](double sigma) {
      return kInvPi * std::sqrt(model.log_second_derivative(2.0 * sigma));
    };
    const QuadratureResult far = integrate_adaptive(in_sigma, lo, upper, options);
    total.value += far.value;
    total.abs_err_estimate += far.abs_err_estimate;
    total.subdivisions += far.subdivisions;
  }
  return total;
}

QuadratureResult expected_zero_count(const RealInterval& interval, double tol) {
  return integrate_kac(zeta_kac_model(), interval, tol);
}

C0Calibration calibrate_c0(double tol, const ExpansionCoefficients& coeffs) {
  if (!(tol > 0.0)) throw DomainError("calibrate_c0: tolerance must be positive");
  C0Calibration out{0.0, {1e-5, 1e-6, 1e-7}, {}, 0.0};
  for (std::size_t i = 0; i < out.anchors.size(); ++i) {
    const double T = 0.5 + out.anchors[i];
    const double t = T - 0.5;
    const double quad = expected_zero_count({T}, 0.01 * tol).value;
    out.estimates[i] = quad - 0.5 * kInvPi * std::log(1.0 / t) - coeffs.correction(t);
  }
  const auto [lo, hi] = std::minmax_element(out.estimates.begin(), out.estimates.end());
  out.spread = *hi - *lo;
  out.c0 = out.estimates[1];
  if (out.spread > tol) {
    throw PrecisionError("calibrate_c0: anchors disagree by " + std::to_string(out.spread));
  }
  return out;
}

C0Calibration calibrate_c0(double tol) { return calibrate_c0(tol, default_expansion_coefficients()); }

const ExpansionCoefficients& calibrated_expansion_coefficients() {
  static const ExpansionCoefficients coeffs = [] {
    ExpansionCoefficients c = default_expansion_coefficients();
    c.c0 = calibrate_c0(1e-8, c).c0;
    c.c[0] = *c.c0;
    return c;
  }();
  return coeffs;
}

double expected_zero_count_expansion(double T, const ExpansionCoefficients& coeffs) {
  const double t = T - 0.5;
  if (!(t > 0.0) || t > kExpansionRadius * (1.0 + 1e-12)) {
    throw DomainError("expansion is validated only for 0 < T - 1/2 <= " + std::to_string(kExpansionRadius));
  }
  if (!coeffs.c0) throw DomainError("expansion coefficients carry no calibrated c0");
  return 0.5 * kInvPi * std::log(1.0 / t) + *coeffs.c0 + coeffs.correction(t);
}

}  // namespace dzeros
