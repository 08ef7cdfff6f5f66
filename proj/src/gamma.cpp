#include <array>
#include <cmath>
#include <limits>

#include "gdl/specfun.hpp"

namespace gdl::specfun {

namespace {

// B_{2k}, k = 1..10
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0,          -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,     43867.0 / 798.0, -174611.0 / 330.0};

constexpr double kStirlingRadius = 15.0;

bool is_nonpositive_integer(cplx s, double tol = 0.0) {
  if (std::abs(s.imag()) > tol) return false;
  const double re = s.real();
  if (re > tol) return false;
  return std::abs(re - std::round(re)) <= tol;
}

cplx stirling(cplx z) {
  const cplx z2 = 1.0 / (z * z);
  cplx zp = 1.0 / z;
  cplx series = 0.0;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / (n * (n - 1.0)) * zp;
    zp *= z2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

// log sin(pi z) modulo 2 pi i, stable for large |Im z|.
cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  if (std::abs(y) < 5.0) return std::log(std::sin(kPi * z));
  if (y > 0.0) {
    const cplx i(0.0, 1.0);
    return -i * kPi * z + std::log(1.0 - std::exp(2.0 * kPi * i * z)) + cplx(-std::log(2.0), kPi / 2.0);
  }
  return std::conj(log_sin_pi(std::conj(z)));
}

cplx log_gamma_right(cplx z, long& terms) {
  cplx shift = 0.0;
  terms = static_cast<long>(kBernoulli.size());
  if (std::abs(z) < kStirlingRadius) {
    const int n = static_cast<int>(std::ceil(kStirlingRadius - z.real()));
    for (int k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
    z += static_cast<double>(n);
    terms += n;
  }
  return stirling(z) - shift;
}

cplx digamma_right(cplx z) {
  cplx shift = 0.0;
  if (std::abs(z) < kStirlingRadius) {
    const int n = static_cast<int>(std::ceil(kStirlingRadius - z.real()));
    for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
    z += static_cast<double>(n);
  }
  const cplx z2 = 1.0 / (z * z);
  cplx zp = z2;
  cplx series = 0.0;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / n * zp;
    zp *= z2;
  }
  return std::log(z) - 0.5 / z - series - shift;
}

}  // namespace

EvalResult log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at nonpositive integer");
  long terms = 0;
  cplx value;
  std::string method = "stirling";
  if (s.real() < 0.5) {
    value = std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s, terms);
    method = "reflection+stirling";
  } else {
    value = log_gamma_right(s, terms);
  }
  const double err = 1e-14 * (1.0 + std::abs(value));
  return {value, err, terms, method};
}

cplx gamma(cplx s) { return std::exp(log_gamma(s).value); }

cplx rgamma(cplx s) {
  if (is_nonpositive_integer(s)) return 0.0;
  return std::exp(-log_gamma(s).value);
}

cplx digamma(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("digamma: pole at nonpositive integer");
  if (s.real() < 0.5) return digamma_right(1.0 - s) - kPi / std::tan(kPi * s);
  return digamma_right(s);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: real argument must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double z2 = 1.0 / (x * x);
  const double series =
      z2 * (1.0 / 12 - z2 * (1.0 / 120 - z2 * (1.0 / 252 - z2 * (1.0 / 240 - z2 * (1.0 / 132 - z2 * 691.0 / 32760)))));
  return std::log(x) - 0.5 / x - series - shift;
}

EvalResult upper_gamma(cplx a, double x) {
  if (!(x > 0.0)) throw DomainError("upper_gamma: x must be positive");
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-17;
  const cplx prefactor_log = a * std::log(x) - x;

  if (x > a.real() + 1.0 || is_nonpositive_integer(a, 1e-12)) {
    if (x < 1.0 && is_nonpositive_integer(a, 1e-12)) {
      // Gamma(-m, x) from E1 and the downward recurrence.
      const int m = -static_cast<int>(std::lround(a.real()));
      double e1 = -kEulerGamma - std::log(x);
      double term = 1.0;
      for (int k = 1; k < 200; ++k) {
        term *= -x / k;
        const double add = -term / k;
        e1 += add;
        if (std::abs(add) < 1e-18 * std::abs(e1)) break;
      }
      double val = e1;
      if (m > 0) {
        double tail = 0.0, fact = 1.0, xp = x;
        for (int k = 0; k < m; ++k) {
          if (k > 0) fact *= k;
          tail += ((k % 2) ? -1.0 : 1.0) * fact / xp;
          xp *= x;
        }
        double mfact = 1.0;
        for (int k = 2; k <= m; ++k) mfact *= k;
        val = ((m % 2) ? -1.0 : 1.0) / mfact * (e1 - std::exp(-x) * tail);
      }
      return {cplx(val, 0.0), 1e-15 * std::abs(val), 200, "e1"};
    }
    // modified Lentz on the Legendre continued fraction
    const double tiny = 1e-300;
    cplx b = x + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    int i = 1;
    for (; i < kMaxIter; ++i) {
      const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
      b += 2.0;
      d = an * d + b;
      if (std::abs(d) < tiny) d = tiny;
      c = b + an / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const cplx del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < kEps) break;
    }
    if (i == kMaxIter) throw ConvergenceError("upper_gamma: continued fraction did not converge");
    const cplx v = std::exp(prefactor_log) * h;
    return {v, 1e-14 * std::abs(v), i, "continued-fraction"};
  }
  // lower gamma series, then Gamma(a) - gamma(a, x)
  cplx term = 1.0 / a;
  cplx sum = term;
  int n = 1;
  for (; n < kMaxIter; ++n) {
    term *= x / (a + static_cast<double>(n));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  if (n == kMaxIter) throw ConvergenceError("upper_gamma: series did not converge");
  const cplx g = gamma(a);
  const cplx lower = std::exp(prefactor_log) * sum;
  const cplx v = g - lower;
  const double err = 1e-15 * (std::abs(g) + std::abs(lower));
  return {v, err, n, "series"};
}

}  // namespace gdl::specfun
