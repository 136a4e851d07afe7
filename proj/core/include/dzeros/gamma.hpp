#pragma once

namespace dzeros {

/// Euler's Gamma for x > 0.
double gamma_function(double x);

/// Upper incomplete Gamma(a, x) for real a and x > 0.
double upper_incomplete_gamma(double a, double x);

/// Integral_X^inf (log x)^g x^{-s} dx for X > 1, s > 1.
double log_power_integral(double g, double s, double X);

/// J(g, sigma) = Integral_2^inf (log x)^g x^{-2 sigma} dx for sigma > 1/2.
double integral_J(double g, double sigma);

}  // namespace dzeros
