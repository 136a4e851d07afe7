#pragma once

#include <cstddef>
#include <functional>

namespace dzeros {

struct QuadratureResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
  std::size_t subdivisions = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_subdivisions = 2000;
};

/// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature on [a, b].
/// The panel with the largest |K15 - G7| is bisected until the summed
/// estimate drops below abs_tol; throws PrecisionError past the cap.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options);

}  // namespace dzeros
