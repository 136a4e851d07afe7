#pragma once

#include <array>
#include <functional>
#include <limits>

#include "dzeros/expansion.hpp"
#include "dzeros/quadrature.hpp"

namespace dzeros {

/// [T, U] with 1/2 < T <= U; U may be +infinity.
struct RealInterval {
  double T;
  double U = std::numeric_limits<double>::infinity();

  void validate() const;
  bool unbounded() const { return U == std::numeric_limits<double>::infinity(); }
};

/// Largest T - 1/2 at which the truncated expansion was checked against
/// quadrature to 1e-6 (scan over (0, 5e-2]).
inline constexpr double kExpansionRadius = 5e-2;

inline constexpr double kDefaultQuadratureTol = 1e-10;

/// Integrand description shared by every frequency set.
struct KacModel {
  /// h^2 (log Z)''(1 + h) for 0 < h <= 1.
  std::function<double(double h)> scaled_near_pole;
  /// (log Z)''(s) for s >= 2.
  std::function<double(double s)> log_second_derivative;
  /// Upper bound on (1/pi) * Integral_{sigma}^{inf} sqrt((log Z)''(2x)) dx.
  std::function<double(double sigma)> tail_bound;
};

/// (1/pi) sqrt((log zeta)''(2 sigma)).
double kac_integrand(double sigma);

/// The zeta instance of KacModel.
const KacModel& zeta_kac_model();

/// (1/pi) Integral_T^U sqrt((log Z)''(2 sigma)) d sigma. Near sigma = 1/2 the
/// integral runs in u = log(1/(2 sigma - 1)); above sigma = 1 in sigma itself.
/// The integral stops at sigma_max, the first integer sigma whose tail bound
/// is below tol/10; when U exceeds it, that bound joins the error estimate.
QuadratureResult integrate_kac(const KacModel& model, const RealInterval& interval, double tol);

QuadratureResult expected_zero_count(const RealInterval& interval, double tol = kDefaultQuadratureTol);

struct C0Calibration {
  double c0;
  /// Anchors t = 1e-5, 1e-6, 1e-7 and the constant inferred at each.
  std::array<double, 3> anchors;
  std::array<double, 3> estimates;
  double spread;
};

/// c0 inferred from quadrature at t = 1e-6; throws PrecisionError when the
/// three anchors disagree by more than tol.
C0Calibration calibrate_c0(double tol, const ExpansionCoefficients& coeffs);
C0Calibration calibrate_c0(double tol = 1e-8);

/// Default coefficients with c0 calibrated at tol 1e-8, computed once.
const ExpansionCoefficients& calibrated_expansion_coefficients();

/// log(1/t)/(2 pi) + c0 + sum c_n t^n with t = T - 1/2 in (0, kExpansionRadius].
double expected_zero_count_expansion(double T, const ExpansionCoefficients& coeffs);

}  // namespace dzeros
