#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gdl/common.hpp"

namespace gdl::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of order n (1 <= n <= 256).
const Rule& gauss_legendre(int n);

template <typename T>
struct Result {
  T value{};
  double err = 0.0;
  long evals = 0;
};

/// Composite Gauss-Legendre with equal panels.
template <typename T, typename F>
T gauss_composite(F&& f, double a, double b, int panels, int order = 16) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  CompensatedSum<T> acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double c = lo + h / 2.0;
    for (int j = 0; j < order; ++j) acc += static_cast<T>(r.weights[j] * h / 2.0) * f(c + h / 2.0 * r.nodes[j]);
  }
  return acc.value();
}

/// Panel doubling until successive composite estimates agree to tol.
template <typename T, typename F>
Result<T> gauss_adaptive(F&& f, double a, double b, double tol, int order = 16, int start_panels = 4,
                         int max_panels = 1 << 16) {
  int panels = start_panels;
  T prev = gauss_composite<T>(f, a, b, panels, order);
  long evals = static_cast<long>(panels) * order;
  while (panels < max_panels) {
    panels *= 2;
    const T cur = gauss_composite<T>(f, a, b, panels, order);
    evals += static_cast<long>(panels) * order;
    const double diff = std::abs(cur - prev);
    if (diff <= tol) return {cur, diff, evals};
    prev = cur;
  }
  throw ConvergenceError("gauss_adaptive: tolerance not reached");
}

/// Double-exponential (tanh-sinh) rule on [a, b]; tolerates integrable
/// endpoint singularities. f is called with (x, x - a, b - x), the distances
/// computed without cancellation.
template <typename T, typename F>
Result<T> tanh_sinh(F&& f, double a, double b, double tol, double rel_tol = 0.0, int max_level = 10) {
  const double half = (b - a) / 2.0;
  constexpr double kTmax = 5.0;
  auto term = [&](double t) -> T {
    const double u = kPi / 2.0 * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = kPi / 2.0 * std::cosh(t) / (ch * ch);
    // distance from the nearer endpoint: half * (1 - tanh|u|) = 2 half / (1 + e^{2|u|})
    const double d = 2.0 * half / (1.0 + std::exp(2.0 * std::abs(u)));
    if (d <= 0.0) return T{};
    double x, da, db;
    if (u >= 0.0) {
      db = d;
      da = 2.0 * half - d;
      x = b - d;
    } else {
      da = d;
      db = 2.0 * half - d;
      x = a + d;
    }
    return static_cast<T>(w * half) * f(x, da, db);
  };
  double h = 1.0;
  CompensatedSum<T> acc;
  acc += term(0.0);
  long evals = 1;
  for (double t = h; t <= kTmax; t += h) {
    acc += term(t) + term(-t);
    evals += 2;
  }
  T prev = acc.value() * h;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2.0;
    for (double t = h; t <= kTmax; t += 2.0 * h) {
      acc += term(t) + term(-t);
      evals += 2;
    }
    const T cur = acc.value() * h;
    const double diff = std::abs(cur - prev);
    if (level >= 3 && diff <= std::max(tol, rel_tol * std::abs(cur))) return {cur, diff, evals};
    prev = cur;
  }
  throw ConvergenceError("tanh_sinh: tolerance not reached");
}

}  // namespace gdl::quad
