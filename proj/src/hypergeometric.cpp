#include <cmath>

#include "gdl/specfun.hpp"

namespace gdl::specfun {

namespace {

using ld = long double;
using lcplx = std::complex<long double>;

constexpr int kMaxTerms = 100000;
constexpr double kLogCaseTol = 1e-6;
constexpr double kDirectLimit = 0.9;

lcplx L(cplx z) { return {z.real(), z.imag()}; }
cplx D(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

struct SeriesSum {
  lcplx value;
  ld abs_sum;
  ld last;
  long terms;
};

// sum_n (a)_n (b)_n / ((c)_n n!) w^n; terminates when a or b is a nonpositive integer.
SeriesSum gauss_series(cplx a, cplx b, cplx c, ld w) {
  const lcplx al = L(a), bl = L(b), cl = L(c);
  lcplx term = 1.0L, sum = 1.0L;
  ld abs_sum = 1.0L, last = 1.0L;
  int quiet = 0;
  long n = 0;
  for (; n < kMaxTerms; ++n) {
    const ld nn = static_cast<ld>(n);
    term *= (al + nn) * (bl + nn) / ((cl + nn) * (nn + 1.0L)) * w;
    sum += term;
    const ld m = std::abs(term);
    abs_sum += m;
    last = m;
    if (m == 0.0L) break;
    if (m < 1e-20L * std::abs(sum)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  if (n == kMaxTerms) throw ConvergenceError("hyp2f1: series did not reach tolerance in 1e5 terms");
  return {sum, abs_sum, last, n + 1};
}

cplx lg(cplx z) { return log_gamma(z).value; }

// c = a + b + m exactly, m >= 0 integer; w = 1 - x.
EvalResult log_case(cplx a, cplx b, int m, ld w) {
  const lcplx al = L(a), bl = L(b);
  const ld lw = std::log(w);
  const cplx ab = a + b + static_cast<double>(m);
  lcplx finite = 0.0L;
  ld abs_sum = 0.0L;
  if (m > 0) {
    // Gamma(m) Gamma(a+b+m) / (Gamma(a+m) Gamma(b+m)) sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n
    const cplx pre = std::exp(lg(static_cast<double>(m)) + lg(ab)) * rgamma(a + static_cast<double>(m)) *
                     rgamma(b + static_cast<double>(m));
    lcplx term = 1.0L, sum = 1.0L;
    for (int n = 0; n + 1 < m; ++n) {
      term *= (al + static_cast<ld>(n)) * (bl + static_cast<ld>(n)) /
              (static_cast<ld>(n + 1) * static_cast<ld>(1 - m + n)) * w;
      sum += term;
    }
    finite = L(pre) * sum;
    abs_sum += std::abs(finite);
  }
  // log series
  const lcplx pre = L(std::exp(lg(ab)) * rgamma(a) * rgamma(b));
  if (pre == 0.0L) return {D(finite), 1e-15, m, "hyp2f1-log"};
  lcplx psi_a = L(digamma(a + static_cast<double>(m)));  // psi(a + n + m)
  lcplx psi_b = L(digamma(b + static_cast<double>(m)));  // psi(b + n + m)
  ld psi_n1 = -static_cast<ld>(kEulerGamma);  // psi(n + 1)
  ld psi_nm1 = -static_cast<ld>(kEulerGamma);  // psi(n + m + 1)
  for (int j = 1; j <= m; ++j) psi_nm1 += 1.0L / j;
  ld fact_m = 1.0L;
  for (int j = 2; j <= m; ++j) fact_m *= j;
  lcplx coef = 1.0L / fact_m;  // (a+m)_n (b+m)_n / (n! (n+m)!) w^n; for m = 0 this is (a)_n (b)_n/(n!)^2 w^n
  const lcplx am = al + static_cast<ld>(m), bm = bl + static_cast<ld>(m);
  lcplx sum = 0.0L;
  ld last = 0.0L;
  int quiet = 0;
  long n = 0;
  for (; n < kMaxTerms; ++n) {
    lcplx bracket;
    if (m == 0)
      bracket = 2.0L * psi_n1 - psi_a - psi_b - lw;
    else
      bracket = lw - psi_n1 - psi_nm1 + psi_a + psi_b;
    const lcplx t = coef * bracket;
    sum += t;
    abs_sum += std::abs(t * pre);
    last = std::abs(t * pre);
    if (std::abs(t) < 1e-20L * std::abs(sum) && std::abs(coef) < 1e-20L * std::abs(sum)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    const ld nn = static_cast<ld>(n);
    coef *= (am + nn) * (bm + nn) / ((nn + 1.0L) * (nn + 1.0L + m)) * w;
    psi_a += 1.0L / (am + nn);
    psi_b += 1.0L / (bm + nn);
    psi_n1 += 1.0L / (nn + 1.0L);
    psi_nm1 += 1.0L / (nn + 1.0L + m);
  }
  if (n == kMaxTerms) throw ConvergenceError("hyp2f1: logarithmic series did not converge");
  lcplx value;
  if (m == 0) {
    value = pre * sum;
  } else {
    const ld sign = (m % 2) ? -1.0L : 1.0L;  // (x - 1)^m = (-w)^m
    value = finite - sign * std::pow(w, static_cast<ld>(m)) * pre * sum;
  }
  return {D(value), static_cast<double>(last + 1e-18L * abs_sum), n + m, "hyp2f1-log"};
}

}  // namespace

EvalResult hyp2f1(cplx a, cplx b, cplx c, double x) { return hyp2f1(a, b, c, x, 1.0 - x); }

EvalResult hyp2f1(cplx a, cplx b, cplx c, double x, double one_minus_x) {
  // x may round to 1 near the endpoint; the caller's complement decides.
  if (!(x >= 0.0 && x <= 1.0 && one_minus_x > 0.0 && one_minus_x <= 1.0))
    throw DomainError("hyp2f1: x must lie in [0, 1)");
  if (nonpositive_integer(c)) throw DomainError("hyp2f1: c is a nonpositive integer");
  if (x == 0.0) return {1.0, 0.0, 1, "hyp2f1-trivial"};
  if (x <= kDirectLimit || nonpositive_integer(a) || nonpositive_integer(b)) {
    const SeriesSum s = gauss_series(a, b, c, x);
    return {D(s.value), static_cast<double>(s.last + 1e-18L * s.abs_sum), s.terms, "hyp2f1-series"};
  }
  const ld w = one_minus_x;
  const cplx m = c - a - b;
  const double mr = std::round(m.real());
  if (std::abs(m.imag()) <= kLogCaseTol && std::abs(m.real() - mr) <= kLogCaseTol) {
    const int mi = static_cast<int>(mr);
    EvalResult r;
    if (mi >= 0) {
      r = log_case(a, b, mi, w);
    } else if (nonpositive_integer(c - a) || nonpositive_integer(c - b)) {
      const SeriesSum s = gauss_series(c - a, c - b, c, x);
      const cplx f = std::exp(m * static_cast<double>(std::log(w)));
      return {f * D(s.value), std::abs(f) * static_cast<double>(s.last + 1e-18L * s.abs_sum), s.terms,
              "hyp2f1-euler-polynomial"};
    } else {
      // Euler: F(a,b;c;x) = (1-x)^{c-a-b} F(c-a, c-b; c; x)
      r = log_case(c - a, c - b, -mi, w);
      const cplx f = std::exp(m * static_cast<double>(std::log(w)));
      r.value *= f;
      r.err *= std::abs(f);
    }
    r.err += std::abs(m - mr) * (1.0 + std::abs(std::log(static_cast<double>(w)))) * std::abs(r.value);
    return r;
  }
  // x -> 1 - x connection formula
  const cplx la = std::exp(lg(c) + lg(m)) * rgamma(c - a) * rgamma(c - b);
  const cplx lb = std::exp(lg(c) + lg(-m)) * rgamma(a) * rgamma(b);
  const SeriesSum s1 = gauss_series(a, b, 1.0 - m, w);
  const SeriesSum s2 = gauss_series(c - a, c - b, 1.0 + m, w);
  const cplx wm = std::exp(m * static_cast<double>(std::log(w)));
  const cplx v = la * D(s1.value) + lb * wm * D(s2.value);
  const double err = std::abs(la) * static_cast<double>(s1.last + 1e-18L * s1.abs_sum) +
                     std::abs(lb * wm) * static_cast<double>(s2.last + 1e-18L * s2.abs_sum) +
                     1e-15 * (std::abs(la * D(s1.value)) + std::abs(lb * wm * D(s2.value)));
  return {v, err, s1.terms + s2.terms, "hyp2f1-connection"};
}

EvalResult hyp2f1_asymptotic(double r, double x, AsymptoticCoefficient coef) {
  if (!(r >= 10.0)) throw DomainError("hyp2f1_asymptotic: requires r >= 10");
  if (!(x >= 3.0)) throw DomainError("hyp2f1_asymptotic: requires x >= 3");
  const cplx i(0.0, 1.0);
  const double root = std::sqrt(x * x - 4.0);
  const double c = coef == AsymptoticCoefficient::corrected ? 1.0 - x / root : 1.0 - (x * x - 2.0) / (x * root);
  const cplx phase = std::exp(2.0 * i * r * (std::log(x) - std::acosh(x / 2.0)));
  const double amp = std::pow(x * x / (x * x - 4.0), 0.25);
  const cplx v = phase * amp * (1.0 + c / (16.0 * i * r));
  return {v, 1.0 / (x * x * r * r), 2, "uniform-asymptotic"};
}

}  // namespace gdl::specfun
