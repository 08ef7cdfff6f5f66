#include "gdl/quadrature.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace gdl::quad {

namespace {

Rule build_rule(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    r.nodes[i] = -static_cast<double>(x);
    r.nodes[n - 1 - i] = static_cast<double>(x);
    r.weights[i] = r.weights[n - 1 - i] = static_cast<double>(w);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw DomainError("gauss_legendre: order outside [1, 256]");
  static std::array<std::unique_ptr<Rule>, 257> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  if (!cache[n]) cache[n] = std::make_unique<Rule>(build_rule(n));
  return *cache[n];
}

}  // namespace gdl::quad
