#include "gdl/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gdl/glfunc.hpp"

namespace gdl::geodesics {

namespace {

using i128 = __int128;

constexpr i64 kClassLimit = 100'000'000;
constexpr double kPsiLimit = 1e6;
constexpr i128 kPellGuard = i128(1) << 61;

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Form {
  i64 a, b, c;
};

// Reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool reduced(i64 a, i64 b, i64 delta) {
  if (b <= 0 || b * b >= delta) return false;
  const i64 two_a = 2 * std::abs(a);
  const i64 lo = two_a + b, hi = two_a - b;
  return lo * lo > delta && (hi <= 0 || hi * hi < delta);
}

// rho(a, b, c) = (c, b', *) with b' = -b mod 2|c| in (sqrt(D) - 2|c|, sqrt(D)).
Form rho(const Form& f, i64 delta, i64 root) {
  const i64 m = 2 * std::abs(f.c);
  const i64 lo = root - m + 1;
  const i64 b = lo + arith::mod(-f.b - lo, m);
  return {f.c, b, (b * b - delta) / (4 * f.c)};
}

double norm0_of(i64 t, i64 u, i64 delta) {
  double r = std::sqrt(static_cast<double>(delta));
  r = 0.5 * (r + static_cast<double>(delta) / r);
  const double eps = 0.5 * (static_cast<double>(t) + static_cast<double>(u) * r);
  return eps * eps;
}

}  // namespace

void check_discriminant(i64 delta) {
  if (delta <= 0) throw DomainError("geodesics: discriminant must be positive");
  if (arith::mod(delta, 4) > 1) throw DomainError("geodesics: discriminant must be 0 or 1 mod 4");
  if (arith::is_square(delta)) throw DomainError("geodesics: discriminant must not be a square");
}

std::pair<i64, i64> pell_fundamental(i64 delta) {
  check_discriminant(delta);
  // alpha = (sqrt(D) - P0)/2 is a root of x^2 + P0 x - c; norm-one convergents
  // p/q give t = 2p + P0 q, u = q.
  const i64 p0 = delta % 2;
  const i64 c = (delta - p0) / 4;
  const i64 root = arith::isqrt(delta);
  i64 P = -p0, Q = 2;
  i128 p_prev = 1, p = 0, q_prev = 0, q = 1;  // convergent (-1) and (-2)
  for (;;) {
    const i64 a = Q > 0 ? floor_div(P + root, Q) : floor_div(P + root + 1, Q);
    const i128 pn = a * p_prev + p, qn = a * q_prev + q;
    p = p_prev;
    q = q_prev;
    p_prev = pn;
    q_prev = qn;
    if (pn > kPellGuard || qn > kPellGuard) throw DomainError("pell_fundamental: solution exceeds 64-bit range");
    if (qn > 0 && pn * pn + p0 * pn * qn - i128(c) * qn * qn == 1) {
      const i128 t = 2 * pn + p0 * qn;
      if (t > kPellGuard) throw DomainError("pell_fundamental: solution exceeds 64-bit range");
      return {static_cast<i64>(t), static_cast<i64>(qn)};
    }
    P = a * Q - P;
    Q = (delta - P * P) / Q;
  }
}

i64 form_class_number(i64 delta) {
  check_discriminant(delta);
  if (delta > kClassLimit) throw DomainError("form_class_number: discriminant above 1e8");
  const i64 root = arith::isqrt(delta);
  std::vector<Form> forms;
  for (i64 b = (delta % 2 == 0 ? 2 : 1); b <= root; b += 2) {
    const i64 n = (delta - b * b) / 4;  // = -ac
    for (i64 a : arith::factorize(n).divisors()) {
      if (!reduced(a, b, delta)) continue;
      const i64 c = -n / a;
      if (arith::gcd(arith::gcd(a, b), std::abs(c)) != 1) continue;
      forms.push_back({a, b, c});
      forms.push_back({-a, b, -c});
    }
  }
  std::map<std::pair<i64, i64>, bool> seen;
  for (const auto& f : forms) seen[{f.a, f.b}] = false;
  i64 cycles = 0;
  for (const auto& f : forms) {
    if (seen[{f.a, f.b}]) continue;
    ++cycles;
    Form g = f;
    while (!seen[{g.a, g.b}]) {
      seen[{g.a, g.b}] = true;
      g = rho(g, delta, root);
    }
  }
  return cycles;
}

CensusResult psi_direct(double x, const ExecContext& ctx) {
  if (!(x > 0.0) || x > kPsiLimit) throw DomainError("psi_direct: x must lie in (0, 1e6]");
  CensusResult out;
  out.x = x;
  if (x < 1.0) return out;
  const double X = std::sqrt(x) + 1.0 / std::sqrt(x);
  // primitive classes with N0 <= x have t0 <= X; candidates delta u^2 = t^2 - 4
  std::vector<PellClassData> cand;
  for (i64 t = 3; static_cast<double>(t) <= X; ++t) {
    const i64 n = t * t - 4;
    for (i64 u = 1; u * u <= n; ++u) {
      if (n % (u * u) != 0) continue;
      const i64 delta = n / (u * u);
      if (arith::mod(delta, 4) > 1) continue;
      const auto [t0, u0] = pell_fundamental(delta);
      if (t0 != t) continue;
      const double nm = norm0_of(t0, u0, delta);
      if (nm > x) continue;
      cand.push_back({delta, 0, t0, u0, nm});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.delta < b.delta; });
  const auto hs = parallel_map<i64>(ctx, cand.size(), [&](std::size_t i) { return form_class_number(cand[i].delta); });
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    cand[i].h = hs[i];
    const double lg = std::log(cand[i].norm0);
    int powers = 0;
    for (double v = cand[i].norm0; v <= x; v *= cand[i].norm0) ++powers;
    acc += static_cast<double>(hs[i] * powers) * lg;
    out.class_count += hs[i];
  }
  out.psi = acc.value();
  out.per_delta = std::move(cand);
  return out;
}

double psi_via_l(double x, const ExecContext& ctx) {
  if (!(x > 0.0) || x > kPsiLimit) throw DomainError("psi_via_l: x must lie in (0, 1e6]");
  const double X = std::sqrt(x) + 1.0 / std::sqrt(x);
  std::vector<i64> ns;
  for (i64 n = 3; static_cast<double>(n) <= X; ++n) ns.push_back(n);
  const auto vals = parallel_map<double>(ctx, ns.size(), [&](std::size_t i) {
    const i64 d = ns[i] * ns[i] - 4;
    return 2.0 * std::sqrt(static_cast<double>(d)) * glfunc::l_value(d, 1.0).result.real();
  });
  CompensatedSum<double> acc;
  for (double v : vals) acc += v;
  return acc.value();
}

std::vector<PgtRow> pgt_error_table(const std::vector<double>& xs, const ExecContext& ctx) {
  std::vector<PgtRow> rows;
  for (double x : xs) {
    const double psi = psi_direct(x, ctx).psi;
    rows.push_back({x, psi, psi - x, (psi - x) / std::pow(x, 2.0 / 3.0)});
  }
  return rows;
}

}  // namespace gdl::geodesics
