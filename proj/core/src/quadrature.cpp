#include "dzeros/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dzeros/errors.hpp"

namespace dzeros {
namespace {

// QUADPACK qk15 nodes and weights. Odd-indexed Kronrod nodes are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrod[j] * pair;
    if (j % 2 == 1) gauss += kGauss[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (!(options.abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (a == b) return {0.0, 0.0, 0};
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("quadrature needs a finite interval a < b");
  }
  std::vector<Panel> panels{gauss_kronrod(f, a, b)};
  const auto summed_error = [&panels] {
    double e = 0.0;
    for (const Panel& p : panels) e += p.error;
    return e;
  };
  std::size_t subdivisions = 0;
  for (double total_error = panels[0].error; total_error > options.abs_tol; total_error = summed_error()) {
    if (subdivisions >= options.max_subdivisions) {
      throw PrecisionError("quadrature: tolerance " + std::to_string(options.abs_tol) + " on [" + std::to_string(a) + ", " + std::to_string(b) + "]" +
                           " not reached after " + std::to_string(subdivisions) +
                           " subdivisions (estimate " + std::to_string(total_error) + ")");
    }
    std::pop_heap(panels.begin(), panels.end());
    const Panel worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    for (const Panel& half : {gauss_kronrod(f, worst.a, mid), gauss_kronrod(f, mid, worst.b)}) {
      panels.push_back(half);
      std::push_heap(panels.begin(), panels.end());
    }
    ++subdivisions;
  }
  // Left-to-right order makes the total independent of heap layout.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double value = 0.0;
  double error = 0.0;
  for (const Panel& p : panels) {
    value += p.value;
    error += p.error;
  }
  return {value, error, subdivisions};
}

}  // namespace dzeros
