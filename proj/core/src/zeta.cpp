#include "dzeros/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "dzeros/errors.hpp"

namespace dzeros {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxHead = std::size_t{1} << 20;
constexpr std::array<int, 4> kCorrectionSchedule = {6, 10, 14, 20};
// An absolute target below this fraction of the value is not resolvable in
// double precision; such targets are met at the rounding floor instead.
constexpr double kRelativeFloor = 1e-14;

std::string sci(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", x);
  return buffer;
}

void require_s(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw DomainError("zeta: argument must satisfy s > 1 (got " + std::to_string(s) + ")");
  }
}

void require_order(int k) {
  if (k < 0 || k > 2) throw DomainError("zeta: derivative order must be 0, 1 or 2");
}

double sign_for_order(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Smallest head that keeps the Bernoulli corrections convergent for this s.
std::size_t initial_head(double s) {
  return std::max<std::size_t>(12, static_cast<std::size_t>(std::ceil(s)));
}

// Partial sum up to start+head-1 plus the tail bracketed by
// [Integral_N^inf f, Integral_{N-1}^inf f]; valid where f is decreasing.
BoundedValue plain_partial_sum(double s, int k, std::size_t start, std::size_t head) {
  const std::size_t end = start + head;
  double sum = 0.0;
  double magnitude = 0.0;
  for (std::size_t n = start; n < end; ++n) {
    const double dn = static_cast<double>(n);
    const double term = std::pow(dn, -s) * std::pow(std::log(dn), k);
    sum += term;
    magnitude += term;
  }
  const double lower = log_power_tail_integral(s, k, static_cast<double>(end));
  const double upper = log_power_tail_integral(s, k, static_cast<double>(end - 1));
  const double rounding = (2.0 * k + 8.0 + static_cast<double>(head)) * kEps * (magnitude + upper);
  return {sum + 0.5 * (lower + upper), 0.5 * (upper - lower) + rounding};
}

// Certified sum of (log n)^k n^{-s} over n >= start, first by a short plain
// sum when s >= 2, otherwise Euler-Maclaurin with a growing budget.
BoundedValue certified_sum(double s, int k, std::size_t start, double target_abs) {
  if (s >= 2.0) {
    const double decreasing_from = std::exp(static_cast<double>(k) / s) + 1.0;
    if (static_cast<double>(start) >= decreasing_from) {
      const BoundedValue plain = plain_partial_sum(s, k, start, 64);
      if (plain.error_bound <= std::max(target_abs, kRelativeFloor * std::abs(plain.value))) return plain;
    }
  }
  BoundedValue best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t head = initial_head(s); head <= kMaxHead; head *= 4) {
    for (int p : kCorrectionSchedule) {
      const BoundedValue r = log_power_sum(s, k, start, {head, p});
      if (r.error_bound < best.error_bound) best = r;
      if (r.error_bound <= std::max(target_abs, kRelativeFloor * std::abs(r.value))) return r;
    }
  }
  throw PrecisionError("zeta: cannot reach absolute error " + sci(target_abs) + " at s = " + sci(s) +
                       " (best bound " + sci(best.error_bound) + ")");
}

}  // namespace

ZetaEvaluation zeta(double s, double target_abs_err) {
  require_s(s);
  if (!(target_abs_err > 0.0)) throw DomainError("zeta: target error must be positive");
  const BoundedValue r = certified_sum(s, 0, 1, target_abs_err);
  return {s, 0, r.value, r.error_bound};
}

ZetaEvaluation zeta_derivative(double s, int k, double target_abs_err) {
  require_s(s);
  if (k != 1 && k != 2) throw DomainError("zeta_derivative: order must be 1 or 2");
  if (!(target_abs_err > 0.0)) throw DomainError("zeta_derivative: target error must be positive");
  const BoundedValue r = certified_sum(s, k, 1, target_abs_err);
  return {s, k, sign_for_order(k) * r.value, r.error_bound};
}

ZetaEvaluation zeta_with_budget(double s, int k, SummationBudget budget) {
  require_s(s);
  require_order(k);
  const BoundedValue r = log_power_sum(s, k, 1, budget);
  return {s, k, sign_for_order(k) * r.value, r.error_bound};
}

ZetaEvaluation zeta_tail(double s, int k, std::size_t start, double target_rel_err) {
  require_s(s);
  require_order(k);
  if (start < 1) throw DomainError("zeta_tail: start must be >= 1");
  // A cheap first pass fixes the scale for the relative target.
  const std::size_t head = initial_head(s);
  const BoundedValue rough = log_power_sum(s, k, start, {head, 10});
  if (rough.error_bound <= target_rel_err * std::abs(rough.value)) {
    return {s, k, sign_for_order(k) * rough.value, rough.error_bound};
  }
  const double scale = std::max(std::abs(rough.value) - rough.error_bound, 0.5 * std::abs(rough.value));
  const BoundedValue r = certified_sum(s, k, start, target_rel_err * scale);
  return {s, k, sign_for_order(k) * r.value, r.error_bound};
}

ZetaJet zeta_jet(double s, double target_rel_err) {
  require_s(s);
  const std::size_t head = initial_head(s);
  const auto sums = log_power_sums(s, 2, 1, {head, 10});
  bool ok = true;
  for (const auto& v : sums) ok = ok && v.error_bound <= target_rel_err * std::abs(v.value);
  if (ok) {
    return {{s, 0, sums[0].value, sums[0].error_bound},
            {s, 1, -sums[1].value, sums[1].error_bound},
            {s, 2, sums[2].value, sums[2].error_bound}};
  }
  ZetaJet jet;
  jet.value = zeta_tail(s, 0, 1, target_rel_err);
  jet.first = zeta_tail(s, 1, 1, target_rel_err);
  jet.second = zeta_tail(s, 2, 1, target_rel_err);
  return jet;
}

BoundedValue log_zeta_second_derivative_bounded(double s) {
  const ZetaJet jet = zeta_jet(s);
  const double z0 = jet.value.value;
  const double r1 = jet.first.value / z0;
  const double r2 = jet.second.value / z0;
  const double value = r2 - r1 * r1;
  // First-order propagation of the three component bounds.
  const double e0 = jet.value.error_bound / z0;
  const double e1 = jet.first.error_bound / z0;
  const double e2 = jet.second.error_bound / z0;
  const double propagated = e2 + std::abs(r2) * e0 + 2.0 * std::abs(r1) * (e1 + std::abs(r1) * e0);
  const double rounding = 8.0 * kEps * (std::abs(r2) + r1 * r1);
  if (!(value > 0.0)) {
    throw PrecisionError("(log zeta)'' lost positivity at s = " + std::to_string(s));
  }
  return {value, propagated + rounding};
}

double log_zeta_second_derivative(double s) { return log_zeta_second_derivative_bounded(s).value; }

double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return std::log(static_cast<double>(n));
}

StieltjesTable stieltjes_constants(int max_index, double precision) {
  if (max_index < 0) throw DomainError("stieltjes_constants: index count must be >= 0");
  if (!(precision > 0.0)) throw DomainError("stieltjes_constants: precision must be positive");
  StieltjesTable table;
  table.precision = precision;
  for (int n = 0; n <= max_index; ++n) {
    BoundedValue best{0.0, std::numeric_limits<double>::infinity()};
    for (std::size_t head : {16, 32, 64}) {
      const BoundedValue r = regularised_harmonic_log_sum_extended(n, {head, kMaxCorrections});
      if (r.error_bound < best.error_bound) best = r;
      if (best.error_bound <= 0.01 * precision) break;
    }
    if (best.error_bound > precision) {
      throw PrecisionError("stieltjes_constants: gamma_" + std::to_string(n) + " certified only to " +
                           std::to_string(best.error_bound));
    }
    table.values.push_back(best.value);
    table.error_bounds.push_back(best.error_bound);
  }
  return table;
}

const StieltjesTable& cached_stieltjes() {
  static const StieltjesTable table = stieltjes_constants(10, 1e-12);
  return table;
}

}  // namespace dzeros
