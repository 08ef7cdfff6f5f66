#include <algorithm>
#include <cmath>

#include "gdl/specfun.hpp"

namespace gdl::specfun {

namespace {

using ld = long double;
using lcplx = std::complex<long double>;

constexpr double kSeriesMinX = 12.0;
constexpr double kMaxX = 1e4;
constexpr double kTinyR = 1e-3;

ld magnitude(ld v) { return std::abs(v); }
ld magnitude(const lcplx& v) { return std::abs(v); }

template <typename T>
struct State {
  T y{};
  T dy{};
};

// One Taylor step of x^2 y'' + x y' + (x^2 - nu2) y = 0 from x0 to x0 + h.
template <typename T>
State<T> taylor_step(const T& nu2, ld x0, const State<T>& s0, ld h) {
  T am2{}, am1{}, a0 = s0.y, a1 = s0.dy;
  T y = a0 + a1 * h;
  T dy = a1;
  ld hp = h;  // h^{n+1} for the term a_{n+1}
  const ld x02 = x0 * x0;
  const ld scale = magnitude(s0.y) + magnitude(s0.dy) * std::abs(h) + 1e-300L;
  int quiet = 0;
  for (int n = 0; n < 400; ++n) {
    const ld nn = n;
    const T a2 = -((2.0L * x0 * nn * (nn + 1.0L) + x0 * (nn + 1.0L)) * a1 + (nn * nn + x02 - nu2) * a0 +
                   2.0L * x0 * am1 + am2) /
                 (x02 * (nn + 1.0L) * (nn + 2.0L));
    const ld hp2 = hp * h;
    y += a2 * hp2;
    dy += (nn + 2.0L) * a2 * hp;
    hp = hp2;
    am2 = am1;
    am1 = a0;
    a0 = a1;
    a1 = a2;
    if (magnitude(a2) * std::abs(hp2) < 1e-22L * scale) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return {y, dy};
}

template <typename T>
ld local_frequency(const T& nu2, ld x) {
  return std::sqrt(std::abs(1.0L) + magnitude(nu2) / (x * x));
}

template <typename T>
State<T> ode_walk(const T& nu2, ld x0, State<T> s, ld x1) {
  ld x = x0;
  while (x < x1) {
    ld h = std::min({2.0L, x / 2.0L, 3.0L / local_frequency(nu2, x), x1 - x});
    s = taylor_step(nu2, x, s, h);
    x += h;
  }
  return s;
}

// Hankel P, Q for order with square nu2. Returns false if the asymptotic
// series does not reach tolerance before its terms start to grow.
template <typename T>
bool hankel_pq(const T& nu2, ld x, T& p, T& q, ld& last) {
  const T mu = 4.0L * nu2;
  T term = T(1.0L);
  p = term;
  q = T(0.0L);
  ld prev = 1.0L;
  for (int k = 1; k < 400; ++k) {
    const ld odd = 2.0L * k - 1.0L;
    term *= (mu - odd * odd) / (8.0L * k * x);
    const ld m = magnitude(term);
    const int r = k % 4;
    if (r == 1) q += term;
    else if (r == 2) p -= term;
    else if (r == 3) q -= term;
    else p += term;
    last = m;
    if (m < 1e-17L) return true;
    if (k > 2 && m > prev) return false;
    prev = m;
  }
  return false;
}

// --- J_nu -----------------------------------------------------------------

struct JSeries {
  lcplx value;
  lcplx deriv;
};

bool near_negative_integer(cplx nu, int& n) {
  if (nu.imag() != 0.0 || nu.real() >= 0.0) return false;
  const double rr = std::round(nu.real());
  if (std::abs(nu.real() - rr) > 0.0) return false;
  n = static_cast<int>(-rr);
  return true;
}

JSeries j_series(cplx nu, ld x) {
  int neg = 0;
  if (near_negative_integer(nu, neg)) {
    JSeries s = j_series(cplx(neg, 0.0), x);
    if (neg % 2) {
      s.value = -s.value;
      s.deriv = -s.deriv;
    }
    return s;
  }
  const lcplx nul(nu.real(), nu.imag());
  const cplx lg = log_gamma(nu + 1.0).value;
  const lcplx base = std::exp(nul * std::log(x / 2.0L) - lcplx(lg.real(), lg.imag()));
  const ld q = -x * x / 4.0L;
  lcplx term = base, sum = 0.0L, dsum = 0.0L;
  for (int k = 0; k < 1000; ++k) {
    if (k > 0) term *= q / (static_cast<ld>(k) * (static_cast<ld>(k) + nul));
    sum += term;
    dsum += term * (2.0L * k + nul);
    if (k > 4 && std::abs(term) < 1e-22L * (std::abs(sum) + 1e-300L) && std::abs(term) < 1e-22L * std::abs(base)) break;
  }
  return {sum, dsum / x};
}

double j_series_limit(cplx nu) {
  return std::max(kSeriesMinX, std::min(std::abs(nu), 60.0));
}

lcplx j_hankel(const lcplx& nu, ld x, const lcplx& p, const lcplx& q) {
  const lcplx chi = x - (nu / 2.0L + 0.25L) * std::numbers::pi_v<ld>;
  return std::sqrt(2.0L / (std::numbers::pi_v<ld> * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// --- k0 --------------------------------------------------------------------

State<ld> k0_series(double r, ld x) {
  if (r == 0.0) {
    // -Y0(x)
    const ld q = x * x / 4.0L;
    ld j0 = 0.0L, dj0 = 0.0L, tail = 0.0L, dtail = 0.0L;
    ld term = 1.0L, h = 0.0L;
    for (int k = 0; k < 400; ++k) {
      if (k > 0) {
        term *= -q / (static_cast<ld>(k) * k);
        h += 1.0L / k;
      }
      j0 += term;
      dj0 += term * 2.0L * k / x;
      if (k > 0) {
        tail -= h * term;
        dtail -= h * term * 2.0L * k / x;
      }
      if (k > 4 && std::abs(term) * (1.0L + h) < 1e-22L) break;
    }
    const ld lg = std::log(x / 2.0L) + static_cast<ld>(kEulerGamma);
    const ld c = 2.0L / std::numbers::pi_v<ld>;
    const ld y0 = c * (lg * j0 + tail);
    const ld dy0 = c * (j0 / x + lg * dj0 + dtail);
    return {-y0, -dy0};
  }
  const ld rr = std::abs(r);
  const ld pr = std::numbers::pi_v<ld> * rr;
  const lcplx nu(0.0L, 2.0L * rr);
  const cplx lg = log_gamma(cplx(1.0, 2.0 * static_cast<double>(rr))).value;
  // base / sinh(pi r), sinh written as e^{pi r}(1 - e^{-2 pi r})/2
  const lcplx base = std::exp(nu * std::log(x / 2.0L) - lcplx(lg.real(), lg.imag()) - pr + std::log(2.0L) -
                              std::log1p(-std::exp(-2.0L * pr)));
  const ld q = -x * x / 4.0L;
  lcplx term = base, sum = 0.0L, dsum = 0.0L;
  for (int k = 0; k < 1000; ++k) {
    if (k > 0) term *= q / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
    sum += term;
    dsum += term * (2.0L * k + nu);
    if (k > 4 && std::abs(term) < 1e-22L * std::max(std::abs(sum), std::abs(base))) break;
  }
  return {-sum.imag(), -dsum.imag() / x};
}

ld k0_hankel(ld x, ld p, ld q) {
  const ld chi = x - std::numbers::pi_v<ld> / 4.0L;
  return -std::sqrt(2.0L / (std::numbers::pi_v<ld> * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double k0_series_limit(double r) { return std::max(kSeriesMinX, std::min(2.0 * std::abs(r), 60.0)); }

void check_x(double x, const char* who) {
  if (!(x > 0.0) || x > kMaxX) throw DomainError(std::string(who) + ": x outside (0, 1e4]");
}

template <typename T, typename SeriesFn, typename HankelFn>
std::vector<T> sweep(const T& nu2, double x_series, std::span<const double> xs, SeriesFn series, HankelFn hankel) {
  std::vector<T> out(xs.size());
  bool have_state = false;
  State<T> st{};
  ld xcur = 0.0L;
  bool hankel_ok = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const ld x = xs[i];
    if (i > 0 && xs[i] < xs[i - 1]) throw DomainError("sweep: abscissae must be ascending");
    if (x <= x_series) {
      out[i] = series(x).y;
      continue;
    }
    if (!hankel_ok) {
      T p, q;
      ld last = 0.0L;
      if (hankel_pq(nu2, x, p, q, last)) hankel_ok = true;
    }
    if (hankel_ok) {
      T p, q;
      ld last = 0.0L;
      hankel_pq(nu2, x, p, q, last);
      out[i] = hankel(x, p, q);
      continue;
    }
    if (!have_state) {
      st = series(static_cast<ld>(x_series));
      xcur = x_series;
      have_state = true;
    }
    st = ode_walk(nu2, xcur, st, x);
    xcur = x;
    out[i] = st.y;
  }
  return out;
}

}  // namespace

EvalResult bessel_j(cplx nu, double x) {
  check_x(x, "bessel_j");
  if (std::abs(nu) > 100.0) throw DomainError("bessel_j: |nu| > 100");
  const double xs[1] = {x};
  const cplx v = bessel_j_sweep(nu, xs)[0];
  return {v, 1e-12 * (1.0 + std::abs(v)), 1, x <= j_series_limit(nu) ? "series" : "ode/hankel"};
}

std::vector<cplx> bessel_j_sweep(cplx nu, std::span<const double> xs) {
  if (std::abs(nu) > 100.0) throw DomainError("bessel_j: |nu| > 100");
  for (double x : xs) check_x(x, "bessel_j");
  const lcplx nul(nu.real(), nu.imag());
  auto series = [&](ld x) {
    const JSeries s = j_series(nu, x);
    return State<lcplx>{s.value, s.deriv};
  };
  auto hankel = [&](ld x, const lcplx& p, const lcplx& q) { return j_hankel(nul, x, p, q); };
  const auto raw = sweep<lcplx>(nul * nul, j_series_limit(nu), xs, series, hankel);
  std::vector<cplx> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = cplx(static_cast<double>(raw[i].real()), static_cast<double>(raw[i].imag()));
  return out;
}

std::vector<double> bessel_kernel_k0_sweep(double r, std::span<const double> xs) {
  if (std::abs(r) > 100.0) throw DomainError("bessel_kernel_k0: |r| > 100");
  for (double x : xs) check_x(x, "bessel_kernel_k0");
  r = std::abs(r);
  if (r > 0.0 && r < kTinyR) {
    // removable singularity: k0 is even and smooth in r, k0(r) = k0(0) + c r^2 + O(r^4)
    const auto at0 = bessel_kernel_k0_sweep(0.0, xs);
    const auto at1 = bessel_kernel_k0_sweep(kTinyR, xs);
    const double w = (r / kTinyR) * (r / kTinyR);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = at0[i] + w * (at1[i] - at0[i]);
    return out;
  }
  const ld nu2 = -4.0L * r * r;
  auto series = [&](ld x) { return k0_series(r, x); };
  auto hankel = [&](ld x, ld p, ld q) { return k0_hankel(x, p, q); };
  const auto raw = sweep<ld>(nu2, k0_series_limit(r), xs, series, hankel);
  return std::vector<double>(raw.begin(), raw.end());
}

EvalResult bessel_kernel_k0(double x, double r) {
  const double xs[1] = {x};
  const double v = bessel_kernel_k0_sweep(r, xs)[0];
  std::string method = x <= k0_series_limit(r) ? "series" : "ode/hankel";
  if (r == 0.0) method += "(r=0 limit)";
  return {cplx(v, 0.0), 1e-12 * (1.0 + std::abs(v)), 1, method};
}

}  // namespace gdl::specfun
