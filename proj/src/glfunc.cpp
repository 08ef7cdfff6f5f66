#include "gdl/glfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>

#include "gdl/specfun.hpp"

namespace gdl::glfunc {

using arith::Factorization;

namespace {

constexpr i64 kDecomposeLimit = 1'000'000'000'000;
constexpr i64 kLChiLimit = 100'000'000;
constexpr i64 kHurwitzMax = 1000;
// Smoothed series is cut where pi m^2 / |D| exceeds this (Gamma(c, x) ~ e^{-x}).
constexpr double kSmoothedCut = 48.0;
constexpr double kDirectTailTol = 1e-6;

int jacobi(i64 a, i64 n) {
  a = arith::mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

bool valid_residue(i64 n) {
  const i64 r = arith::mod(n, 4);
  return r == 0 || r == 1;
}

cplx cpow(double base, cplx e) { return std::exp(e * std::log(base)); }

std::vector<int> character_period(i64 D) {
  const i64 q = std::abs(D);
  std::vector<int> chi(static_cast<std::size_t>(q) + 1);
  for (i64 a = 0; a <= q; ++a) chi[a] = kronecker_chi(D, a);
  return chi;
}

EvalResult l_chi_at_one(i64 D) {
  // sum_m chi(m)/m over complete periods: -(1/q) sum_a chi(a) psi(a/q)
  const i64 q = std::abs(D);
  CompensatedSum<double> acc;
  for (i64 a = 1; a < q; ++a) {
    const int c = kronecker_chi(D, a);
    if (c != 0) acc += c * specfun::digamma(static_cast<double>(a) / q);
  }
  const double v = -acc.value() / q;
  return {v, 1e-15 * std::sqrt(static_cast<double>(q)) * (1.0 + std::abs(v)), q, "character-periods-digamma"};
}

EvalResult l_chi_hurwitz(cplx s, i64 D) {
  if (s == cplx(1.0, 0.0)) return l_chi_at_one(D);
  const i64 q = std::abs(D);
  const auto chi = character_period(D);
  CompensatedSum<cplx> acc;
  double err = 0.0;
  long terms = 0;
  for (i64 a = 1; a < q; ++a) {
    if (chi[a] == 0) continue;
    const EvalResult z = specfun::hurwitz_zeta(s, static_cast<double>(a) / q);
    acc += static_cast<double>(chi[a]) * z.value;
    err += z.err;
    terms += z.terms;
  }
  const cplx f = cpow(static_cast<double>(q), -s);
  return {f * acc.value(), std::abs(f) * err, std::max(terms, 1L), "hurwitz-blocks"};
}

EvalResult l_chi_smoothed(cplx s, i64 D) {
  const double q = static_cast<double>(std::abs(D));
  const double a = D < 0 ? 1.0 : 0.0;
  const cplx c1 = (s + a) / 2.0, c2 = (1.0 - s + a) / 2.0;
  const double Q = q / kPi;
  const cplx r1 = specfun::rgamma(c1);
  const cplx ratio = cpow(Q, c2 - c1) * r1;
  const i64 M = static_cast<i64>(std::ceil(std::sqrt(kSmoothedCut * q / kPi)));
  CompensatedSum<cplx> acc;
  double mag = 0.0, err = 0.0;
  for (i64 m = 1; m <= M; ++m) {
    const int c = kronecker_chi(D, m);
    if (c == 0) continue;
    const double x = kPi * static_cast<double>(m) * static_cast<double>(m) / q;
    const double lm = std::log(static_cast<double>(m));
    const EvalResult g1 = specfun::upper_gamma(c1, x);
    const EvalResult g2 = specfun::upper_gamma(c2, x);
    const cplx t1 = std::exp(-s * lm) * r1 * g1.value;
    const cplx t2 = std::exp((s - 1.0) * lm) * ratio * g2.value;
    acc += static_cast<double>(c) * (t1 + t2);
    mag += std::abs(t1) + std::abs(t2);
    err += std::abs(std::exp(-s * lm) * r1) * g1.err + std::abs(std::exp((s - 1.0) * lm) * ratio) * g2.err;
  }
  return {acc.value(), err + 1e-15 * mag, std::max<long>(M, 1), "smoothed-theta-series"};
}

}  // namespace

bool is_fundamental(i64 D) {
  if (D == 1) return true;
  if (D == 0) return false;
  const i64 r = arith::mod(D, 4);
  if (r == 1) return arith::factorize(std::abs(D)).squarefree();
  if (r != 0) return false;
  const i64 m = D / 4;
  const i64 mr = arith::mod(m, 4);
  return (mr == 2 || mr == 3) && arith::factorize(std::abs(m)).squarefree();
}

DiscriminantDecomp decompose(i64 n) {
  if (!valid_residue(n)) throw DomainError("decompose: n must be 0 or 1 mod 4");
  if (std::abs(n) > kDecomposeLimit) throw DomainError("decompose: |n| exceeds 1e12");
  if (n == 0) return {0, 0, 1};
  const Factorization fac = arith::factorize(std::abs(n));
  i64 core = n < 0 ? -1 : 1, f = 1;
  for (auto [p, e] : fac.factors) {
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e % 2) core *= p;
  }
  if (arith::mod(core, 4) == 1) return {n, core, f};
  // core = 2, 3 mod 4: D = 4 core and f is even because n = 0, 1 mod 4
  return {n, 4 * core, f / 2};
}

int kronecker_chi(i64 D, i64 m) {
  if (m < 0) throw DomainError("kronecker_chi: m must be nonnegative");
  if (m == 0) return std::abs(D) == 1 ? 1 : 0;
  int t = 1;
  while (m % 2 == 0) {
    m /= 2;
    if (D % 2 == 0) return 0;
    const i64 r = arith::mod(D, 8);
    if (r == 3 || r == 5) t = -t;
  }
  if (m == 1) return t;
  return t * jacobi(D, m);
}

EvalResult l_chi(cplx s, i64 D, LRoute route) {
  if (std::abs(D) > kLChiLimit) throw DomainError("l_chi: |D| exceeds 1e8");
  if (D == 0) throw DomainError("l_chi: D must be nonzero");
  if (D == 1) {
    if (s == cplx(1.0, 0.0)) throw PoleError("l_chi: pole of zeta at s = 1");
    return specfun::zeta(s);
  }
  switch (route) {
    case LRoute::hurwitz:
      if (!(s.real() > 0.0)) throw DomainError("l_chi: Hurwitz blocks need Re s > 0");
      return l_chi_hurwitz(s, D);
    case LRoute::smoothed:
      return l_chi_smoothed(s, D);
    case LRoute::automatic:
      break;
  }
  if (s == cplx(1.0, 0.0)) return l_chi_at_one(D);
  if (std::abs(D) <= kHurwitzMax && s.real() > 0.0 && std::abs(s - 1.0) > 1e-3) return l_chi_hurwitz(s, D);
  return l_chi_smoothed(s, D);
}

EvalResult l_series_direct(i64 n, cplx s, i64 qmax) {
  if (!(s.real() > 1.0)) throw DomainError("l_series_direct: needs Re s > 1");
  if (qmax < 2) throw DomainError("l_series_direct: qmax must be at least 2");
  if (!valid_residue(n)) return {0.0, 0.0, 1, "zero-residue-class"};
  const arith::SpfSieve sieve(qmax);
  const std::vector<i64> rho = arith::rho_table(n, qmax, sieve);
  // Liouville lambda: zeta(2s)/zeta(s) = sum lambda(m) m^{-s}
  std::vector<int> lambda(static_cast<std::size_t>(qmax) + 1, 1);
  for (i64 m = 2; m <= qmax; ++m) lambda[m] = -lambda[m / sieve.spf(m)];
  std::vector<i64> c(static_cast<std::size_t>(qmax) + 1, 0);
  for (i64 d = 1; d <= qmax; ++d)
    for (i64 q = 1; d * q <= qmax; ++q) c[d * q] += lambda[d] * rho[q];
  CompensatedSum<cplx> acc;
  std::vector<double> partial(static_cast<std::size_t>(qmax) + 1, 0.0);
  double A = 0.0;
  for (i64 N = 1; N <= qmax; ++N) {
    if (c[N] != 0) acc += static_cast<double>(c[N]) * std::exp(-s * std::log(static_cast<double>(N)));
    A += static_cast<double>(c[N]);
    partial[N] = A;
  }
  // Tail from partial sums A(x) ~ kappa x + beta, fitted on [Q/2, Q]:
  // sum_{N>Q} c(N) N^{-s} = -A(Q) Q^{-s} + s int_Q^inf A(x) x^{-s-1} dx.
  const double Qd = static_cast<double>(qmax);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, cnt = 0.0;
  for (i64 x = qmax / 2; x <= qmax; ++x) {
    const double xd = static_cast<double>(x) / Qd;
    sx += xd, sy += partial[x], sxx += xd * xd, sxy += xd * partial[x], cnt += 1.0;
  }
  const double kappa = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) / Qd;
  const double beta = (sy - kappa * Qd * sx) / cnt;
  double spread = 0.0;
  for (i64 x = qmax / 2; x <= qmax; ++x)
    spread = std::max(spread, std::abs(partial[x] - kappa * static_cast<double>(x) - beta));
  const cplx qs = std::exp(-s * std::log(Qd));
  const cplx tail = (s * kappa * Qd / (s - 1.0) + beta - A) * qs;
  const double sigma = s.real();
  EvalResult r{acc.value() + tail, 2.0 * spread * std::abs(qs) * (1.0 + std::abs(s) / sigma) + 1e-15 * std::abs(acc.value()),
               static_cast<long>(qmax), "dirichlet-series"};
  if (r.err > kDirectTailTol) r.warning = "insufficient qmax: tail estimate exceeds tolerance";
  return r;
}

cplx finite_factor(const DiscriminantDecomp& dec, cplx s) {
  if (dec.f == 1) return 1.0;
  const Factorization ff = arith::factorize(dec.f);
  CompensatedSum<cplx> acc;
  for (i64 d : ff.divisors()) {
    const int mu = arith::mobius(arith::factorize(d));
    if (mu == 0) continue;
    const int c = kronecker_chi(dec.D, d);
    if (c == 0) continue;
    acc += static_cast<double>(mu * c) * cpow(static_cast<double>(d), -s) * arith::sigma_pow(1.0 - 2.0 * s, dec.f / d);
  }
  return acc.value();
}

LValue l_value(i64 n, cplx s) {
  LValue out{n, s, {}};
  if (!valid_residue(n)) {
    out.result = {0.0, 0.0, 1, "zero-residue-class"};
    return out;
  }
  if (n == 0) {
    if (s == cplx(1.0, 0.0)) throw PoleError("l_value: zeta(2s - 1) has a pole at s = 1");
    out.result = specfun::zeta(2.0 * s - 1.0);
    out.result.method = "zeta(2s-1)";
    return out;
  }
  const DiscriminantDecomp dec = decompose(n);
  const EvalResult l = l_chi(s, dec.D);
  const cplx f = finite_factor(dec, s);
  out.result = {l.value * f, l.err * std::abs(f), l.terms, l.method + "*finite-factor"};
  return out;
}

EvalResult l_completed(i64 n, cplx s) {
  if (n == 0) throw DomainError("l_completed: n must be nonzero");
  const cplx g = s / 2.0 + 0.25 - (n > 0 ? 0.25 : -0.25);
  const EvalResult lg = specfun::log_gamma(g);
  const EvalResult l = l_value(n, s).result;
  const cplx pre = std::exp(-s / 2.0 * std::log(kPi / static_cast<double>(std::abs(n))) + lg.value);
  return {pre * l.value, std::abs(pre) * l.err + std::abs(pre * l.value) * lg.err, l.terms, "completed:" + l.method};
}

double fe_residual(i64 n, cplx s) { return std::abs(l_completed(n, s).value - l_completed(n, 1.0 - s).value); }

// --- L_n(s) in bulk for real s ------------------------------------------------

namespace {

// Gamma(c, x) for fixed real c on x in (0, kSmoothedCut]. For c > 0 through
// Gamma(c) - x^c Phi(x) with Phi entire; otherwise log Gamma(c, x) is
// tabulated on [kLogStart, cut] and smaller x go to upper_gamma.
class IncGammaTable {
 public:
  static constexpr double kStep = 1.0 / 128.0;
  static constexpr double kLogStart = 0.5;

  explicit IncGammaTable(double c) : c_(c), positive_(c > 0.0) {
    gamma_c_ = positive_ ? specfun::gamma(c).real() : 0.0;
    const double start = positive_ ? 0.0 : kLogStart;
    const std::size_t n = static_cast<std::size_t>((kSmoothedCut - start) / kStep) + 3;
    v_.resize(n);
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = start + static_cast<double>(i) * kStep;
      if (positive_) {
        double phi;
        if (x < 2.0) {
          // sum_k (-x)^k / (k! (c + k))
          double term = 1.0, sum = 1.0 / c;
          for (int k = 1; k < 80; ++k) {
            term *= -x / k;
            sum += term / (c + k);
            if (std::abs(term) < 1e-18) break;
          }
          phi = sum;
        } else {
          phi = (gamma_c_ - specfun::upper_gamma(c, x).value.real()) / std::pow(x, c);
        }
        v_[i] = phi;
        d_[i] = x == 0.0 ? -1.0 / (c + 1.0) : (std::exp(-x) - c * phi) / x;
      } else {
        const double g = specfun::upper_gamma(c, x).value.real();
        v_[i] = std::log(g);
        d_[i] = -std::exp((c - 1.0) * std::log(x) - x) / g;
      }
    }
  }

  double operator()(double x) const {
    if (positive_) return gamma_c_ - std::pow(x, c_) * hermite(x);
    if (x < kLogStart) return specfun::upper_gamma(c_, x).value.real();
    return std::exp(hermite(x - kLogStart));
  }

  /// Phi(x) for c > 0, so callers can fold x^c into precomputed powers.
  double phi(double x) const { return hermite(x); }
  double gamma_c() const { return gamma_c_; }
  bool positive() const { return positive_; }

 private:
  double hermite(double u) const {
    const double t = u / kStep;
    const std::size_t i = static_cast<std::size_t>(t);
    const double p = t - static_cast<double>(i);
    const double p2 = p * p, p3 = p2 * p;
    return (2 * p3 - 3 * p2 + 1) * v_[i] + (p3 - 2 * p2 + p) * kStep * d_[i] + (-2 * p3 + 3 * p2) * v_[i + 1] +
           (p3 - p2) * kStep * d_[i + 1];
  }

  double c_;
  bool positive_;
  double gamma_c_ = 0.0;
  std::vector<double> v_;
  std::vector<double> d_;
};

struct RealKernels {
  double s;
  IncGammaTable first[2];   // c1 = (s + a)/2 for a = 0, 1
  IncGammaTable second[2];  // c2 = (1 - s + a)/2
  bool symmetric;           // s = 1/2: both sums coincide

  explicit RealKernels(double s_)
      : s(s_),
        first{IncGammaTable(s_ / 2.0), IncGammaTable((s_ + 1.0) / 2.0)},
        second{IncGammaTable((1.0 - s_) / 2.0), IncGammaTable((2.0 - s_) / 2.0)},
        symmetric(s_ == 0.5) {}
};

// Smoothed theta series for real s with tabulated kernels; chi from the
// smallest-prime-factor table by complete multiplicativity.
double l_chi_real(i64 D, const RealKernels& k, const arith::SpfSieve& sieve, std::vector<signed char>& chi) {
  const int a = D < 0 ? 1 : 0;
  const double q = static_cast<double>(std::abs(D));
  const i64 M = static_cast<i64>(std::floor(std::sqrt(kSmoothedCut * q / kPi)));
  chi.assign(static_cast<std::size_t>(M) + 1, 0);
  if (M >= 1) chi[1] = 1;
  for (i64 m = 2; m <= M; ++m) {
    const i64 p = sieve.spf(m);
    chi[m] = static_cast<signed char>(p == m ? kronecker_chi(D, p) : chi[p] * chi[m / p]);
  }
  const double s = k.s;
  const double c1 = (s + a) / 2.0, c2 = (1.0 - s + a) / 2.0;
  const double Q = q / kPi;
  const double r1 = specfun::rgamma(c1).real();
  const double ratio = std::pow(Q, c2 - c1) * r1;
  const IncGammaTable& g1 = k.first[a];
  const IncGammaTable& g2 = k.second[a];
  CompensatedSum<double> acc;
  if (k.symmetric) {
    // 2 sum chi(m) m^{-1/2} (1 - x^c Phi(x) / Gamma(c)), x^c = Q^{-c} m^{2c}
    const double K = std::pow(Q, -c1) * r1;
    for (i64 m = 1; m <= M; ++m) {
      if (chi[m] == 0) continue;
      const double md = static_cast<double>(m);
      const double x = md * md / Q;
      acc += chi[m] * (1.0 / std::sqrt(md) - K * (a ? md : 1.0) * g1.phi(x));
    }
    return 2.0 * acc.value();
  }
  for (i64 m = 1; m <= M; ++m) {
    if (chi[m] == 0) continue;
    const double md = static_cast<double>(m);
    const double x = md * md / Q;
    const double lm = std::log(md);
    acc += chi[m] * (std::exp(-s * lm) * r1 * g1(x) + std::exp((s - 1.0) * lm) * ratio * g2(x));
  }
  return acc.value();
}

}  // namespace

std::vector<double> l_value_batch(const std::vector<i64>& ns, double s, const ExecContext& ctx) {
  if (s == 1.0) throw DomainError("l_value_batch: s = 1 goes through l_value");
  i64 max_abs = 1;
  for (i64 n : ns) max_abs = std::max(max_abs, std::abs(n));
  const i64 m_max = static_cast<i64>(std::sqrt(kSmoothedCut * static_cast<double>(max_abs) / kPi)) + 2;
  const arith::SpfSieve sieve(m_max);
  const RealKernels kernels(s);
  return parallel_map<double>(ctx, ns.size(), [&](std::size_t i) -> double {
    const i64 n = ns[i];
    if (!valid_residue(n)) return 0.0;
    if (n == 0) return specfun::zeta(2.0 * s - 1.0).value.real();
    const DiscriminantDecomp dec = decompose(n);
    const double f = finite_factor(dec, s).real();
    if (dec.D == 1) return specfun::zeta(s).value.real() * f;
    std::vector<signed char> chi;
    return l_chi_real(dec.D, kernels, sieve, chi) * f;
  });
}

}  // namespace gdl::glfunc
