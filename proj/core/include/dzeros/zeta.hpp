#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dzeros/euler_maclaurin.hpp"

namespace dzeros {

/// zeta^{(order)}(s) for real s > 1 with a rigorous absolute error bound.
struct ZetaEvaluation {
  double s = 0.0;
  int order = 0;
  double value = 0.0;
  double error_bound = 0.0;
};

/// zeta(s), zeta'(s), zeta''(s) evaluated together.
struct ZetaJet {
  ZetaEvaluation value;
  ZetaEvaluation first;
  ZetaEvaluation second;
};

/// The target is absolute, but never tighter than 1e-14 of |zeta(s)|, which
/// near the pole is all double precision can resolve.
ZetaEvaluation zeta(double s, double target_abs_err = 1e-12);

/// k in {1, 2}; same target convention as zeta().
ZetaEvaluation zeta_derivative(double s, int k, double target_abs_err = 1e-12);

/// zeta^{(k)}(s) with an explicit term budget; the bound is whatever that
/// budget certifies (used to study convergence).
ZetaEvaluation zeta_with_budget(double s, int k, SummationBudget budget);

/// Sum_{n >= start} (-log n)^k n^{-s}, k in {0, 1, 2}, to relative accuracy
/// target_rel_err. With start = 2 and k = 0 this is zeta(s) - 1 without
/// cancellation.
ZetaEvaluation zeta_tail(double s, int k, std::size_t start, double target_rel_err = 1e-14);

ZetaJet zeta_jet(double s, double target_rel_err = 1e-14);

/// (log zeta)''(s) = zeta''/zeta - (zeta'/zeta)^2 together with a
/// first-order propagated error bound.
BoundedValue log_zeta_second_derivative_bounded(double s);

/// (log zeta)''(s) for s > 1. Strictly positive.
double log_zeta_second_derivative(double s);

/// Lambda(n): log p when n = p^m, else 0. Trial division; n <= 1e8 in practice.
double von_mangoldt(std::uint64_t n);

/// gamma_0..gamma_M with a common absolute precision.
struct StieltjesTable {
  std::vector<double> values;
  std::vector<double> error_bounds;
  double precision = 0.0;

  double operator[](std::size_t n) const { return values.at(n); }
  std::size_t size() const { return values.size(); }
};

StieltjesTable stieltjes_constants(int max_index, double precision);

/// gamma_0..gamma_10 to 1e-12, computed once per process.
const StieltjesTable& cached_stieltjes();

}  // namespace dzeros
