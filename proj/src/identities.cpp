#include "gdl/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gdl/glfunc.hpp"
#include "gdl/quadrature.hpp"
#include "gdl/specfun.hpp"

namespace gdl::identities {

using transforms::WindowSpec;

namespace {

constexpr i64 kLerchTerms = 4000;      // n range of the Lerch-moment LHS
constexpr double kBatchRelErr = 1e-10;  // l_value_batch accuracy

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string num(cplx v) {
  if (v.imag() == 0.0) return num(v.real());
  return num(v.real()) + (v.imag() < 0 ? "" : "+") + num(v.imag()) + "i";
}

// x^s for x > 0
cplx cpow(double x, cplx s) { return std::exp(s * std::log(x)); }

struct TailedSum {
  cplx value;
  double err;
};

// sum_{q <= Q} a(q) q^{-s} plus the tail of a mean-value fit of the partial
// sums A(x) = sum_{q <= x} a(q) on [Q/2, Q]: A ~ kappa x, or kappa x + mu x log x
// when the series has a double pole at s = 1. a[0] is ignored.
TailedSum dirichlet_with_tail(const std::vector<cplx>& a, cplx s, bool double_pole = false) {
  const i64 Q = static_cast<i64>(a.size()) - 1;
  CompensatedSum<cplx> acc;
  std::vector<cplx> partial(a.size(), 0.0);
  cplx A = 0.0;
  for (i64 q = 1; q <= Q; ++q) {
    if (a[q] != 0.0) acc += a[q] * cpow(static_cast<double>(q), -s);
    A += a[q];
    partial[q] = A;
  }
  const double Qd = static_cast<double>(Q);
  cplx kappa = A / Qd, mu = 0.0;
  if (double_pole) {
    // least squares in the basis x, x log x
    double s11 = 0, s12 = 0, s22 = 0;
    cplx r1 = 0.0, r2 = 0.0;
    for (i64 x = Q / 2; x <= Q; ++x) {
      const double b1 = static_cast<double>(x), b2 = b1 * std::log(b1);
      s11 += b1 * b1;
      s12 += b1 * b2;
      s22 += b2 * b2;
      r1 += b1 * partial[x];
      r2 += b2 * partial[x];
    }
    const double det = s11 * s22 - s12 * s12;
    kappa = (s22 * r1 - s12 * r2) / det;
    mu = (s11 * r2 - s12 * r1) / det;
  }
  double spread = 0.0;
  for (i64 x = Q / 2; x <= Q; ++x) {
    const double xd = static_cast<double>(x);
    spread = std::max(spread, std::abs(partial[x] - kappa * xd - mu * xd * std::log(xd)));
  }
  const cplx qs = cpow(Qd, -s);
  // int_Q^inf x^{-s} dA(x) for A = kappa x + mu x log x, minus the boundary
  // term A(Q) Q^{-s} already accounted for by the fit
  const cplx tail = (kappa + mu) * Qd * qs / (s - 1.0) + mu * Qd * qs * (std::log(Qd) / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
  const cplx fit_gap = (A - kappa * Qd - mu * Qd * std::log(Qd)) * qs;
  const double err = 2.0 * spread * std::abs(qs) * (1.0 + std::abs(s) / s.real()) + 1e-15 * std::abs(acc.value());
  return {acc.value() + tail - fit_gap, err};
}

std::vector<i64> int_range(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

// L_{n^2 - 4 l^2}(s) for n in ns; batch kernels for real s.
std::vector<cplx> l_values(const std::vector<i64>& ns, i64 l, cplx s, const ExecContext& ctx) {
  std::vector<i64> discs;
  discs.reserve(ns.size());
  for (i64 n : ns) discs.push_back(n * n - 4 * l * l);
  std::vector<cplx> out(ns.size());
  if (s.imag() == 0.0 && s.real() != 1.0) {
    const auto v = glfunc::l_value_batch(discs, s.real(), ctx);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
  }
  return parallel_map<cplx>(ctx, discs.size(), [&](std::size_t i) { return glfunc::l_value(discs[i], s).result.value; });
}

double moment_constant() {
  const auto& c = specfun::constants();
  return -2.0 - kPi / 2.0 + 3.0 * c.euler_gamma - 2.0 * c.zeta_prime_3_2 / c.zeta_3_2 - std::log(8.0 * kPi);
}

}  // namespace

void IdentityReport::settle() { passed = std::isfinite(residual) && residual <= std::max(budget, tolerance); }

void MomentConfig::validate() const {
  if (!(X > 4.0)) throw DomainError("MomentConfig: X must exceed 4");
  if (!(theta > 0.0 && theta <= 0.25)) throw DomainError("MomentConfig: theta must lie in (0, 1/4]");
}

IdentityReport main_term_identity(cplx s, i64 l, i64 qmax, double tolerance) {
  if (!(s.real() > 1.0)) throw DomainError("main_term_identity: needs Re s > 1");
  if (l < 1) throw DomainError("main_term_identity: l must be positive");
  if (qmax < 2) throw DomainError("main_term_identity: qmax must be at least 2");
  const arith::SpfSieve sieve(qmax);
  const i64 m = l * l;
  std::vector<cplx> a(static_cast<std::size_t>(qmax) + 1, 0.0);
  for (i64 q = 1; q <= qmax; ++q)
    a[q] = static_cast<double>(arith::ab_solution_count(m, q, &sieve)) / static_cast<double>(q);
  const TailedSum lhs = dirichlet_with_tail(a, s);
  const EvalResult z1 = specfun::zeta(s), z2 = specfun::zeta(1.0 + s);
  const cplx rhs = arith::sigma_pow(-s, m) * z1.value / z2.value;
  IdentityReport r;
  r.name = "main-term";
  r.lhs = lhs.value;
  r.rhs = rhs;
  r.residual = std::abs(lhs.value - rhs) / std::abs(rhs);
  r.budget = (lhs.err + std::abs(rhs) * (z1.err / std::abs(z1.value) + z2.err / std::abs(z2.value))) / std::abs(rhs);
  r.tolerance = tolerance;
  r.params = {{"s", num(s)}, {"l", std::to_string(l)}, {"qmax", std::to_string(qmax)}, {"residual", "relative"}};
  r.settle();
  return r;
}

IdentityReport lerch_moment_identity(cplx s, cplx alpha, i64 l, i64 qmax, double tolerance, const ExecContext& ctx) {
  if (!(s.real() > 1.5)) throw DomainError("lerch_moment_identity: needs Re s > 3/2");
  if (!(alpha.real() > 1.0)) throw DomainError("lerch_moment_identity: needs Re alpha > 1");
  if (l < 1) throw DomainError("lerch_moment_identity: l must be positive");
  if (qmax < 2) throw DomainError("lerch_moment_identity: qmax must be at least 2");

  // LHS: direct sum over n <= N, tail from the mean of L over (N/2, N].
  const i64 N = kLerchTerms;
  const auto ns = int_range(1, N);
  const auto lv = l_values(ns, l, s, ctx);
  CompensatedSum<cplx> lhs_acc;
  for (i64 n = 1; n <= N; ++n) lhs_acc += lv[n - 1] * cpow(static_cast<double>(n), -alpha);
  cplx mean = 0.0;
  for (i64 n = N / 2 + 1; n <= N; ++n) mean += lv[n - 1];
  const double cnt = static_cast<double>(N - N / 2);
  mean /= cnt;
  double var = 0.0;
  for (i64 n = N / 2 + 1; n <= N; ++n) var += std::norm(lv[n - 1] - mean);
  const double sd = std::sqrt(var / cnt);
  const EvalResult tail_z = specfun::hurwitz_zeta(alpha, static_cast<double>(N + 1));
  const cplx lhs = lhs_acc.value() + mean * tail_z.value;
  double sum_abs = 0.0;
  for (const auto& v : lv) sum_abs += std::abs(v);
  const double lhs_err = 3.0 * sd / std::sqrt(cnt) * std::abs(tail_z.value) + kBatchRelErr * sum_abs;

  // RHS: coefficients a(q) = q^{-alpha} sum_c N_q(c) zeta(-c/q, 0, alpha), c = a + b mod q.
  const i64 m = l * l;
  auto coeff = parallel_map<cplx>(ctx, static_cast<std::size_t>(qmax), [&](std::size_t i) -> cplx {
    const i64 q = static_cast<i64>(i) + 1;
    const auto counts = arith::pair_counts_by_sum(m, q);
    CompensatedSum<cplx> acc;
    for (i64 c = 0; c < q; ++c)
      if (counts[c]) acc += static_cast<double>(counts[c]) * specfun::lerch_zeta(-static_cast<double>(c) / q, 0.0, alpha).value;
    return acc.value() * cpow(static_cast<double>(q), -alpha);
  });
  coeff.insert(coeff.begin(), cplx{0.0});
  const TailedSum series = dirichlet_with_tail(coeff, s, true);
  const cplx factor = specfun::zeta(2.0 * s).value / specfun::zeta(s).value;
  const cplx rhs = factor * series.value;

  IdentityReport r;
  r.name = "lerch-moment";
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.budget = lhs_err + std::abs(factor) * series.err;
  r.tolerance = tolerance;
  r.params = {{"s", num(s)}, {"alpha", num(alpha)}, {"l", std::to_string(l)}, {"qmax", std::to_string(qmax)},
              {"n_terms", std::to_string(N)}};
  r.metrics = {{"lhs_err", lhs_err}, {"rhs_err", std::abs(factor) * series.err}};
  r.settle();
  return r;
}

EvalResult convolution_lhs(const WindowSpec& w, cplx s, i64 l, i64 nmax, const ExecContext& ctx) {
  if (!w.compact()) throw DomainError("convolution_lhs: window must be compactly supported");
  if (l < 1) throw DomainError("convolution_lhs: l must be positive");
  if (static_cast<double>(nmax) < w.upper()) throw DomainError("convolution_lhs: nmax must cover the support");
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::ceil(w.lower())));
  const i64 hi = static_cast<i64>(std::floor(w.upper()));
  std::vector<i64> ns;
  for (i64 n = lo; n <= hi; ++n)
    if (transforms::window_eval(w, static_cast<double>(n)) != 0.0) ns.push_back(n);
  if (ns.empty()) return {0.0, 0.0, 0, "finite-sum"};
  std::vector<i64> discs;
  for (i64 n : ns) discs.push_back(n * n - 4 * l * l);
  const auto vals = parallel_map<EvalResult>(ctx, ns.size(), [&](std::size_t i) {
    return glfunc::l_value(discs[i], s).result;
  });
  CompensatedSum<cplx> acc;
  double err = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double wn = transforms::window_eval(w, static_cast<double>(ns[i]));
    acc += wn * vals[i].value;
    err += std::abs(wn) * vals[i].err;
  }
  return {acc.value(), err, static_cast<long>(ns.size()), "finite-sum"};
}

EvalResult kloosterman_rhs(const WindowSpec& w, cplx s, i64 l, i64 /*nmax*/, i64 qmax, const KloostermanOptions& opt,
                           const ExecContext& ctx) {
  if (!(s.real() > 1.5)) throw DomainError("kloosterman_rhs: needs Re s > 3/2");
  if (!w.compact()) throw DomainError("kloosterman_rhs: window must be compactly supported");
  if (l < 1) throw DomainError("kloosterman_rhs: l must be positive");
  if (qmax < 2) throw DomainError("kloosterman_rhs: qmax must be at least 2");
  const i64 m = l * l;
  const EvalResult mass = transforms::window_moment0(w);
  const EvalResult z2s = specfun::zeta(2.0 * s), zs = specfun::zeta(s), z1s = specfun::zeta(1.0 + s);
  const cplx main = mass.value * arith::sigma_pow(-s, m) * z2s.value / z1s.value;
  const double main_err = mass.err * std::abs(main / mass.value) + 1e-14 * std::abs(main);
  if (opt.main_term_only) return {main, main_err, 1, "main-term"};

  const auto cosine = transforms::window_cosine(w);
  const double t_stop = cosine->cutoff(opt.decay_tol);
  const double slope = t_stop / (2.0 * kPi);
  const double total_terms = slope * static_cast<double>(qmax) * static_cast<double>(qmax + 1) / 2.0;
  if (total_terms > opt.max_terms) throw ConvergenceError("kloosterman_rhs: term count exceeds the cost guard");

  // a(q) = q^{-1} sum_{n >= 1} S(l^2, n, n; q) C(2 pi n / q), summed against q^{-s}
  auto coeff = parallel_map<cplx>(ctx, static_cast<std::size_t>(qmax), [&](std::size_t i) -> cplx {
    const i64 q = static_cast<i64>(i) + 1;
    const auto diag = arith::diagonal_kloosterman_table(m, q);
    const i64 n_stop = static_cast<i64>(slope * static_cast<double>(q));
    const double step = 2.0 * kPi / static_cast<double>(q);
    CompensatedSum<double> acc;
    i64 r = 0;
    for (i64 n = 1; n <= n_stop; ++n) {
      if (++r == q) r = 0;
      if (diag[r] != 0.0) acc += diag[r] * (*cosine)(step * static_cast<double>(n));
    }
    return acc.value() / static_cast<double>(q);
  });
  coeff.insert(coeff.begin(), cplx{0.0});
  // omega(2l) != 0 brings in L_0 = zeta(2s - 1) and a double pole at s = 1
  const bool double_pole = transforms::window_eval(w, 2.0 * static_cast<double>(l)) != 0.0;
  const TailedSum series = dirichlet_with_tail(coeff, s, double_pole);
  const cplx factor = 2.0 * z2s.value / zs.value;
  const cplx value = main + factor * series.value;
  // n truncation: past the decay cutoff each q has at most t_stop q / 2pi more
  // terms of size decay_tol * int omega against |S| <= #{ab = l^2 (q)}.
  const double n_err = std::abs(factor) * opt.decay_tol * cosine->l1 * 4.0 * std::abs(cpow(2.0, 1.0 - s)) / (s.real() - 1.0);
  const double err = main_err + std::abs(factor) * series.err + n_err + 1e-12 * std::abs(value);
  return {value, err, static_cast<long>(total_terms), "kloosterman-double-sum"};
}

IdentityReport convolution_residual(const WindowSpec& w, cplx s, i64 l, i64 nmax, i64 qmax, double tolerance,
                                    const ExecContext& ctx) {
  const EvalResult lhs = convolution_lhs(w, s, l, nmax, ctx);
  const EvalResult rhs = kloosterman_rhs(w, s, l, nmax, qmax, {}, ctx);
  IdentityReport r;
  r.name = "convolution";
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.residual = std::abs(lhs.value - rhs.value);
  r.budget = lhs.err + rhs.err;
  r.tolerance = tolerance;
  r.params = {{"window", w.to_string()}, {"s", num(s)}, {"l", std::to_string(l)}, {"nmax", std::to_string(nmax)},
              {"qmax", std::to_string(qmax)}};
  r.metrics = {{"lhs_err", lhs.err}, {"rhs_err", rhs.err}};
  r.settle();
  return r;
}

IdentityReport sy_diagnostic(const WindowSpec& w, i64 qmax, i64 lmax, const ExecContext& ctx) {
  if (!w.compact() || w.lower() < 2.0) throw DomainError("sy_diagnostic: window must vanish on |x| <= 2");
  if (qmax < 1 || lmax < 0) throw DomainError("sy_diagnostic: bad truncation");
  const EvalResult lhs = convolution_lhs(w, 1.0, 1, static_cast<i64>(std::ceil(w.upper())), ctx);
  const auto cosine = transforms::window_cosine(w);
  const double slope = cosine->cutoff(1e-10) / (2.0 * kPi);
  // omega^(xi) = 2 C(2 pi xi) for the even extension of omega
  const auto terms = parallel_map<double>(ctx, static_cast<std::size_t>(qmax), [&](std::size_t i) -> double {
    const i64 q = static_cast<i64>(i) + 1;
    const auto row = arith::kloosterman_row_table(1, q);
    const i64 l_stop = std::min<i64>(lmax, static_cast<i64>(slope * static_cast<double>(q)));
    CompensatedSum<double> acc;
    acc += row[0] * 2.0 * (*cosine)(0.0);
    for (i64 ll = 1; ll <= l_stop; ++ll)
      acc += 2.0 * row[arith::mul_mod(ll, ll, q)] * 2.0 * (*cosine)(2.0 * kPi * static_cast<double>(ll) / q);
    return acc.value() / (static_cast<double>(q) * static_cast<double>(q));
  });
  const double zeta2 = kPi * kPi / 6.0;
  IdentityReport r;
  r.name = "sy-diagnostic";
  r.lhs = 2.0 * lhs.value;
  CompensatedSum<double> sum;
  for (i64 q = 1; q <= qmax; ++q) {
    sum += terms[q - 1];
    if (q == qmax || (q * 100 == qmax) || (q * 10 == qmax))
      r.metrics.emplace_back("residual_q" + std::to_string(q), std::abs(r.lhs - zeta2 * sum.value()));
  }
  r.rhs = zeta2 * sum.value();
  r.residual = std::abs(r.lhs - r.rhs);
  r.budget = 2.0 * lhs.err;
  r.params = {{"window", w.to_string()}, {"qmax", std::to_string(qmax)}, {"lmax", std::to_string(lmax)},
              {"contract", "none"}};
  r.passed = true;
  return r;
}

IdentityReport t13_check(double X, const MomentConfig& cfg, const ExecContext& ctx) {
  MomentConfig c = cfg;
  c.X = X;
  c.validate();
  const i64 hi = static_cast<i64>(std::ceil(X)) - 1;
  const auto ns = int_range(3, hi);
  const auto lv = l_values(ns, 1, 0.5, ctx);
  CompensatedSum<double> acc;
  double sum_abs = 0.0;
  for (const auto& v : lv) {
    acc += v.real();
    sum_abs += std::abs(v);
  }
  const double z = specfun::constants().zeta_3_2;
  const double main = X * std::log(X) / z + X / (2.0 * z) * moment_constant();
  const double lhs = acc.value();
  const double res = lhs - main;
  const double exponent = 2.0 / 3.0 + 2.0 * c.theta / 3.0;
  IdentityReport r;
  r.name = "t13";
  r.lhs = lhs;
  r.rhs = main;
  r.residual = std::abs(res);
  r.budget = kBatchRelErr * sum_abs;
  r.params = {{"X", num(X)}, {"theta", num(c.theta)}};
  r.metrics = {{"relative_error", std::abs(res) / std::abs(lhs)},
               {"normalized_residual", res / std::pow(X, exponent)},
               {"exponent", exponent}};
  r.passed = std::isfinite(res);
  return r;
}

IdentityReport t13_trend(const std::vector<double>& xs, const MomentConfig& cfg, double max_rel, const ExecContext& ctx) {
  if (xs.empty()) throw DomainError("t13_trend: empty grid");
  IdentityReport r;
  r.name = "t13-trend";
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  double max_norm = 0.0;
  for (double X : xs) {
    const IdentityReport one = t13_check(X, cfg, ctx);
    const double rel = one.metrics[0].second;
    monotone = monotone && rel <= prev;
    prev = rel;
    max_norm = std::max(max_norm, std::abs(one.metrics[1].second));
    r.metrics.emplace_back("relative_error_X" + num(X), rel);
    r.metrics.emplace_back("normalized_residual_X" + num(X), one.metrics[1].second);
    r.lhs = one.lhs;
    r.rhs = one.rhs;
    r.budget = one.budget;
  }
  r.residual = prev;
  r.tolerance = max_rel;
  r.metrics.emplace_back("max_abs_normalized_residual", max_norm);
  r.metrics.emplace_back("monotone", monotone ? 1.0 : 0.0);
  r.params = {{"theta", num(cfg.theta)}, {"max_relative_error", num(max_rel)}};
  r.passed = monotone && prev <= max_rel;
  return r;
}

IdentityReport smoothed_bound_t14(double X, double T, const ExecContext& ctx) {
  if (!(X > 4.0 && T > 0.0)) throw DomainError("smoothed_bound_t14: needs X > 4, T > 0");
  const i64 lo = std::max<i64>(3, static_cast<i64>(std::ceil(X - 10.0 * T)));
  const i64 hi = static_cast<i64>(std::floor(X + 10.0 * T));
  const auto ns = int_range(lo, hi);
  const auto lv = l_values(ns, 1, 0.5, ctx);
  CompensatedSum<double> acc;
  double sum_abs = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double u = (static_cast<double>(ns[i]) - X) / T;
    const double wgt = std::exp(-u * u);
    acc += wgt * lv[i].real();
    sum_abs += wgt * std::abs(lv[i]);
  }
  IdentityReport r;
  r.name = "t14";
  r.lhs = acc.value();
  r.rhs = T;
  r.residual = std::abs(acc.value()) / T;
  r.budget = kBatchRelErr * sum_abs / T;
  r.params = {{"X", num(X)}, {"T", num(T)}};
  r.metrics = {{"ratio", acc.value() / T}, {"T_over_X_two_thirds", T / std::pow(X, 2.0 / 3.0)}};
  if (!(T > std::pow(X, 2.0 / 3.0))) r.warning = "T below X^{2/3}";
  r.passed = std::isfinite(acc.value());
  return r;
}

EvalResult windowed_main_term(const WindowSpec& w, i64 l) {
  if (!w.compact()) throw DomainError("windowed_main_term: window must be compactly supported");
  if (l < 1) throw DomainError("windowed_main_term: l must be positive");
  const i64 m = l * l;
  const double sig = arith::sigma_pow(-0.5, m).real();
  double dlog = 0.0;
  for (i64 d : arith::factorize(m).divisors()) dlog += std::log(static_cast<double>(d)) / std::sqrt(static_cast<double>(d));
  const double c = moment_constant() + 2.0 + kPi / 2.0 - 2.0 * dlog / sig;
  const double two_l = 2.0 * static_cast<double>(l);

  auto pts = w.breakpoints();
  if (two_l > pts.front() && two_l < pts.back()) pts.push_back(two_l);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  CompensatedSum<double> acc;
  double err = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    const bool below = b <= two_l;
    auto f = [&](double x, double da, double db) {
      const double om = transforms::window_eval(w, x);
      if (om == 0.0) return 0.0;
      // |x - 2l| from the endpoint distance when 2l is an endpoint
      double gap = std::abs(x - two_l);
      if (a == two_l) gap = da;
      if (b == two_l) gap = db;
      const double lg = std::log(gap) + std::log(x + two_l);
      return om * (lg - (below ? -1.0 : 1.0) * kPi / 2.0 + c);
    };
    const auto q = quad::tanh_sinh<double>(f, a, b, 1e-13 * (b - a), 1e-12);
    acc += q.value;
    err += q.err;
    evals += q.evals;
  }
  const double pre = sig / (2.0 * specfun::constants().zeta_3_2);
  EvalResult r{pre * acc.value(), pre * err, evals, "tanh-sinh"};
  if (transforms::window_eval(w, two_l) != 0.0) r.warning = "omega(2l) != 0: logarithmic singularity inside the support";
  return r;
}

IdentityReport spectral_remainder(const WindowSpec& w, i64 l, const ExecContext& ctx) {
  const EvalResult mt = windowed_main_term(w, l);
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::ceil(w.lower())));
  const i64 hi = static_cast<i64>(std::floor(w.upper()));
  const auto ns = int_range(lo, hi);
  const auto lv = l_values(ns, l, 0.5, ctx);
  CompensatedSum<double> acc;
  double sum_abs = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double om = transforms::window_eval(w, static_cast<double>(ns[i]));
    acc += om * lv[i].real();
    sum_abs += std::abs(om * lv[i]);
  }
  IdentityReport r;
  r.name = "spectral-remainder";
  r.lhs = acc.value();
  r.rhs = mt.value;
  r.residual = std::abs(acc.value() - mt.real());
  r.budget = kBatchRelErr * sum_abs + mt.err;
  r.warning = mt.warning;
  r.params = {{"window", w.to_string()}, {"l", std::to_string(l)}};
  if (w.kind == transforms::WindowKind::transition) {
    const double X = w.a2, T = w.fall;
    r.metrics.emplace_back("normalized_residual", (acc.value() - mt.real()) / (std::sqrt(X) * std::sqrt(X / T)));
  }
  r.passed = std::isfinite(r.residual);
  return r;
}

}  // namespace gdl::identities
