#include <array>
#include <cmath>
#include <mutex>

#include "gdl/specfun.hpp"

namespace gdl::specfun {

namespace {

using lcplx = std::complex<long double>;

constexpr int kEmTerms = 14;

const std::array<long double, kEmTerms + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    constexpr long double b2k[kEmTerms] = {
        1.0L / 6,           -1.0L / 30,          1.0L / 42,           -1.0L / 30,
        5.0L / 66,          -691.0L / 2730,      7.0L / 6,            -3617.0L / 510,
        43867.0L / 798,     -174611.0L / 330,    854513.0L / 138,     -236364091.0L / 2730,
        8553103.0L / 6,     -23749461029.0L / 870};
    std::array<long double, kEmTerms + 1> t{};
    long double fact = 1.0L;
    for (int k = 1; k <= kEmTerms; ++k) {
      fact *= (2.0L * k - 1.0L) * (2.0L * k);
      t[k] = b2k[k - 1] / fact;
    }
    return t;
  }();
  return table;
}

int em_cutoff(cplx s) { return static_cast<int>(std::ceil(std::abs(s))) + 2 * kEmTerms + 6; }

}  // namespace

EvalResult hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  const auto& bf = bernoulli_over_factorial();
  const int n_cut = em_cutoff(s);
  const lcplx sl(s.real(), s.imag());
  CompensatedSum<cplx> head;
  for (int n = 0; n < n_cut; ++n) head += std::exp(-s * std::log(n + a));
  const long double x = static_cast<long double>(n_cut) + a;
  const long double lx = std::log(x);
  const lcplx xs = std::exp(-sl * lx);  // x^{-s}
  lcplx tail = x * xs / (sl - 1.0L) + 0.5L * xs;
  lcplx poch = sl;  // (s)_{2k-1}
  lcplx xp = xs / x;
  long double last = 0.0L;
  for (int k = 1; k <= kEmTerms; ++k) {
    const lcplx term = bf[k] * poch * xp;
    tail += term;
    last = std::abs(term);
    poch *= (sl + static_cast<long double>(2 * k - 1)) * (sl + static_cast<long double>(2 * k));
    xp /= x * x;
  }
  const cplx value = head.value() + cplx(static_cast<double>(tail.real()), static_cast<double>(tail.imag()));
  const double err = static_cast<double>(last) + 1e-16 * n_cut * (1.0 + std::abs(value));
  return {value, err, n_cut + kEmTerms, "euler-maclaurin"};
}

EvalResult zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() <= -2.0 || std::abs(s.imag()) > 100.0) throw DomainError("zeta: argument outside Re s > -2, |Im s| <= 100");
  return hurwitz_zeta(s, 1.0);
}

EvalResult zeta_deriv(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_deriv: requires real s > 1");
  const auto& bf = bernoulli_over_factorial();
  const int n_cut = em_cutoff(s);
  CompensatedSum<long double> head;
  for (int n = 2; n < n_cut; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    head += -ln * std::exp(-s * ln);
  }
  const long double sl = s;
  const long double x = n_cut;
  const long double lx = std::log(x);
  const long double xs = std::exp(-sl * lx);
  long double tail = -lx * x * xs / (sl - 1.0L) - x * xs / ((sl - 1.0L) * (sl - 1.0L)) - 0.5L * lx * xs;
  long double poch = sl, dpoch = 1.0L;
  long double xp = xs / x;
  long double last = 0.0L;
  for (int k = 1; k <= kEmTerms; ++k) {
    const long double term = bf[k] * (dpoch - lx * poch) * xp;
    tail += term;
    last = std::abs(term);
    for (int j : {2 * k - 1, 2 * k}) {
      dpoch = dpoch * (sl + j) + poch;
      poch *= sl + j;
    }
    xp /= x * x;
  }
  const double value = static_cast<double>(head.value() + tail);
  return {cplx(value, 0.0), static_cast<double>(last) + 1e-15, n_cut + kEmTerms, "euler-maclaurin-derivative"};
}

// Borwein's accelerated alternating series for eta(s), second route used for
// the constant self-check.
namespace {

struct EtaPair {
  long double eta;
  long double deta;
};

EtaPair eta_borwein(long double s) {
  constexpr int n = 40;
  std::array<long double, n + 1> d{};
  long double term = 1.0L, acc = 1.0L;
  d[0] = 1.0L;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i) * (2.0L * i - 1.0L));
    acc += term;
    d[i] = acc;
  }
  long double e = 0.0L, de = 0.0L;
  for (int k = 0; k < n; ++k) {
    const long double ln = std::log(static_cast<long double>(k + 1));
    const long double w = ((k % 2) ? -1.0L : 1.0L) * (d[k] - d[n]) * std::exp(-s * ln);
    e += w;
    de += -ln * w;
  }
  return {-e / d[n], -de / d[n]};
}

}  // namespace

const Constants& constants() {
  static const Constants c = [] {
    Constants k{};
    k.pi = kPi;
    k.euler_gamma = kEulerGamma;
    k.zeta_3_2 = zeta(1.5).real();
    k.zeta_prime_3_2 = zeta_deriv(1.5).real();

    const long double s = 1.5L;
    const long double f = 1.0L - std::pow(2.0L, 1.0L - s);
    const long double df = std::pow(2.0L, 1.0L - s) * std::log(2.0L);
    const EtaPair ep = eta_borwein(s);
    const long double z2 = ep.eta / f;
    const long double dz2 = (ep.deta * f - ep.eta * df) / (f * f);

    long double h = 0.0L;
    const int m = 100000;
    for (int i = m; i >= 1; --i) h += 1.0L / i;
    const long double mm = m;
    const long double gamma_series =
        h - std::log(mm) - 1.0L / (2 * mm) + 1.0L / (12 * mm * mm) - 1.0L / (120 * mm * mm * mm * mm);

    if (std::abs(k.zeta_3_2 - static_cast<double>(z2)) > 1e-12 ||
        std::abs(k.zeta_prime_3_2 - static_cast<double>(dz2)) > 1e-12 ||
        std::abs(k.euler_gamma - static_cast<double>(gamma_series)) > 1e-12)
      throw ConvergenceError("constants: self-check failed");
    return k;
  }();
  return c;
}

// --- Lerch ------------------------------------------------------------------

EvalResult lerch_zeta(double alpha, double beta, cplx s) {
  const double n0 = std::floor(-alpha) + 1.0;
  const double a = n0 + alpha;  // in (0, 1]
  const double bf = beta - std::floor(beta);
  if (bf == 0.0) {
    EvalResult r = hurwitz_zeta(s, a);
    r.method = "hurwitz";
    return r;
  }
  if (!(s.real() > 0.0)) throw DomainError("lerch_zeta: twisted series needs Re s > 0");
  const cplx z = e_phase(bf);
  const double gap = std::abs(1.0 - z);
  const double m_est = 64.0 * (std::abs(s) + 1.0) / gap + 16.0;
  if (m_est > 1e7) throw ConvergenceError("lerch_zeta: phase too close to 1");
  const long m_cut = static_cast<long>(m_est);

  CompensatedSum<cplx> head;
  for (long m = 0; m < m_cut; ++m) head += e_phase(bf * static_cast<double>(m)) * std::exp(-s * std::log(m + a));

  // Euler transformation of sum_{m>=M} z^m g(m): z^M sum_k Delta^k g(M) z^k/(1-z)^{k+1}
  constexpr int kDiff = 14;
  const lcplx sl(s.real(), s.imag());
  std::array<lcplx, kDiff + 1> g{};
  for (int j = 0; j <= kDiff; ++j) g[j] = std::exp(-sl * std::log(static_cast<long double>(m_cut + j) + a));
  const lcplx zl(z.real(), z.imag());
  const lcplx w = zl / (1.0L - zl);
  lcplx tail = 0.0L, wk = 1.0L / (1.0L - zl);
  long double last = 0.0L;
  for (int k = 0; k <= kDiff; ++k) {
    tail += g[0] * wk;
    last = std::abs(g[0] * wk);
    for (int j = 0; j < kDiff - k; ++j) g[j] = g[j + 1] - g[j];
    wk *= w;
  }
  const cplx zm = e_phase(bf * static_cast<double>(m_cut));
  const cplx t(static_cast<double>(tail.real()), static_cast<double>(tail.imag()));
  const cplx value = e_phase(n0 * bf) * (head.value() + zm * t);
  return {value, static_cast<double>(last) + 1e-15 * m_cut, m_cut + kDiff, "direct+euler-transform"};
}

double lerch_fe_residual(double beta, cplx s) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("lerch_fe_residual: beta must lie in (0, 1)");
  if (!(s.real() < 1.0)) throw DomainError("lerch_fe_residual: needs Re s < 1 so the twisted sums converge");
  const cplx i(0.0, 1.0);
  const cplx lhs = hurwitz_zeta(s, beta).value;
  const cplx p_plus = lerch_zeta(0.0, beta, 1.0 - s).value;
  const cplx p_minus = lerch_zeta(0.0, -beta, 1.0 - s).value;
  const cplx pre = std::exp((s - 1.0) * std::log(2.0 * kPi)) * gamma(1.0 - s);
  const cplx rhs = pre * (-i * std::exp(i * kPi * s / 2.0) * p_plus + i * std::exp(-i * kPi * s / 2.0) * p_minus);
  return std::abs(lhs - rhs);
}

}  // namespace gdl::specfun
