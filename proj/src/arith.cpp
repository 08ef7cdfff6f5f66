#include "gdl/arith.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numeric>

namespace gdl::arith {

namespace {

std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// e(k/q) for k in [0, q).
std::vector<cplx> phase_table(i64 q) {
  std::vector<cplx> t(static_cast<std::size_t>(q));
  for (i64 k = 0; k < q; ++k) t[k] = e_phase(static_cast<double>(k) / static_cast<double>(q));
  return t;
}

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Solutions of x^2 = u mod 2^j for odd u.
i64 odd_sqrt_count_pow2(i64 u, int j) {
  if (j <= 0) return 1;
  if (j == 1) return 1;
  if (j == 2) return mod(u, 4) == 1 ? 2 : 0;
  return mod(u, 8) == 1 ? 4 : 0;
}

// #{(a,b) mod p^k : ab = m}.
i64 ab_count_prime_power(i64 p, int k, i64 m) {
  const i64 pk = ipow(p, k);
  const i64 r = mod(m, pk);
  const i64 phi_pk = pk - pk / p;
  if (r == 0) {
    i64 total = pk;  // a = 0
    i64 pi = 1;
    for (int i = 0; i < k; ++i) {
      const i64 rest = pk / pi;  // p^{k-i}
      total += (rest - rest / p) * pi;
      pi *= p;
    }
    return total;
  }
  int v = 0;
  i64 t = r;
  while (t % p == 0) {
    t /= p;
    ++v;
  }
  return static_cast<i64>(v + 1) * phi_pk;
}

}  // namespace

// --- elementary ------------------------------------------------------------

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
  i64 r = 1 % m;
  i64 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return r;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
  }
  if (old_r != 1 && m != 1) throw DomainError("mod_inverse: argument not invertible");
  return mod(old_s, m);
}

i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt: negative argument");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  const i64 r = isqrt(n);
  return r * r == n;
}

std::vector<i64> Factorization::divisors() const {
  std::vector<i64> d{1};
  for (auto [p, e] : factors) {
    const std::size_t cur = d.size();
    i64 pp = 1;
    for (int i = 1; i <= e; ++i) {
      pp *= p;
      for (std::size_t j = 0; j < cur; ++j) d.push_back(d[j] * pp);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](auto pe) { return pe.second == 1; });
}

Factorization factorize(i64 n) {
  if (n < 1) throw DomainError("factorize: n must be positive");
  Factorization f;
  f.n = n;
  auto take = [&](i64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.emplace_back(p, e);
  };
  take(2);
  take(3);
  take(5);
  // wheel mod 30
  static constexpr int kGaps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  i64 p = 7;
  int gi = 0;
  while (p * p <= n) {
    if (p > kTrialDivisionLimit) throw DomainError("factorize: prime factor beyond trial division limit");
    take(p);
    p += kGaps[gi];
    gi = (gi + 1) & 7;
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

int mobius(const Factorization& f) {
  if (!f.squarefree()) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}

i64 euler_phi(const Factorization& f) {
  i64 r = f.n;
  for (auto [p, e] : f.factors) r = r / p * (p - 1);
  return r;
}

SpfSieve::SpfSieve(i64 limit) : spf_(static_cast<std::size_t>(std::max<i64>(limit, 1) + 1), 0) {
  const i64 n = limit;
  for (i64 i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (i64 p : primes_) {
      if (p > spf_[i] || i * p > n) break;
      spf_[i * p] = p;
    }
  }
  if (n >= 1) spf_[1] = 1;
}

Factorization SpfSieve::factorize(i64 n) const {
  if (n < 1 || n > limit()) throw DomainError("SpfSieve::factorize: out of range");
  Factorization f;
  f.n = n;
  while (n > 1) {
    const i64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

// --- representation counts -------------------------------------------------

i64 rho_brute(i64 q, i64 n) {
  if (q < 1) throw DomainError("rho_brute: q must be positive");
  const i64 m = 4 * q;
  const i64 target = mod(n, m);
  i64 count = 0;
  for (i64 x = 0; x < 2 * q; ++x)
    if (mul_mod(x, x, m) == target) ++count;
  return count;
}

i64 sqrt_count_prime_power(i64 p, int k, i64 n) {
  if (k == 0) return 1;
  const i64 pk = ipow(p, k);
  const i64 r = mod(n, pk);
  if (r == 0) return ipow(p, k / 2);
  int v = 0;
  i64 u = r;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (v % 2 == 1) return 0;
  const i64 scale = ipow(p, v / 2);
  if (p == 2) return scale * odd_sqrt_count_pow2(u, k - v);
  return pow_mod(u, (p - 1) / 2, p) == 1 ? 2 * scale : 0;
}

i64 rho(i64 q, i64 n) {
  if (q < 1) throw DomainError("rho: q must be positive");
  if (q < 64) return rho_brute(q, n);
  const Factorization f = factorize(q);
  i64 total = 1;
  bool saw_two = false;
  for (auto [p, e] : f.factors) {
    const int k = p == 2 ? e + 2 : e;
    if (p == 2) saw_two = true;
    total *= sqrt_count_prime_power(p, k, n);
    if (total == 0) return 0;
  }
  if (!saw_two) total *= sqrt_count_prime_power(2, 2, n);
  return total / 2;
}

std::vector<i64> rho_table(i64 n, i64 qmax, const SpfSieve& sieve) {
  if (qmax > sieve.limit()) throw DomainError("rho_table: sieve too small");
  std::vector<i64> out(static_cast<std::size_t>(qmax + 1), 0);
  if (qmax < 1) return out;
  const i64 r4 = mod(n, 4);
  if (r4 != 0 && r4 != 1) return out;
  out[1] = 1;
  for (i64 q = 2; q <= qmax; ++q) {
    const i64 p = sieve.spf(q);
    i64 rest = q;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    const i64 local = p == 2 ? sqrt_count_prime_power(2, k + 2, n) / 2 : sqrt_count_prime_power(p, k, n);
    out[q] = out[rest] * local;
  }
  return out;
}

cplx sigma_pow(cplx s, i64 n) {
  if (n < 1) throw DomainError("sigma_pow: n must be positive");
  CompensatedSum<cplx> acc;
  for (i64 d : factorize(n).divisors()) acc += std::exp(s * std::log(static_cast<double>(d)));
  return acc.value();
}

// --- exponential sums ------------------------------------------------------

KloostermanValue gen_kloosterman(i64 m, i64 n1, i64 n2, i64 q) {
  if (q < 1) throw DomainError("gen_kloosterman: q must be positive");
  const auto phase = phase_table(q);
  const i64 mr = mod(m, q), a1 = mod(n1, q), b1 = mod(n2, q);
  CompensatedSum<cplx> acc;
  for (i64 a = 1; a <= q; ++a) {
    const i64 g = gcd(a, q);
    if (mr % g != 0) continue;
    if (b1 % g != 0) continue;  // the g lifts of b sum to zero
    const i64 qg = q / g;
    const i64 b0 = qg == 1 ? 0 : mul_mod(mr / g, mod_inverse((a / g) % qg, qg), qg);
    const i64 idx = mod(mul_mod(a, a1, q) + mul_mod(b0, b1, q), q);
    acc += static_cast<double>(g) * phase[idx];
  }
  return {acc.value(), q, m, n1, n2};
}

KloostermanValue kloosterman(i64 n1, i64 n2, i64 q) {
  KloostermanValue v = gen_kloosterman(1, n1, n2, q);
  return v;
}

cplx gen_kloosterman_exhaustive(i64 m, i64 n1, i64 n2, i64 q) {
  if (q < 1) throw DomainError("gen_kloosterman_exhaustive: q must be positive");
  const auto phase = phase_table(q);
  const i64 mr = mod(m, q);
  CompensatedSum<cplx> acc;
  for (i64 a = 1; a <= q; ++a)
    for (i64 b = 1; b <= q; ++b)
      if (mul_mod(a, b, q) == mr) acc += phase[mod(mul_mod(a, n1, q) + mul_mod(b, n2, q), q)];
  return acc.value();
}

double ramanujan(i64 n, i64 q) {
  if (q < 1) throw DomainError("ramanujan: q must be positive");
  const auto phase = phase_table(q);
  CompensatedSum<double> acc;
  for (i64 a = 1; a <= q; ++a)
    if (gcd(a, q) == 1) acc += phase[mul_mod(a, n, q)].real();
  return acc.value();
}

double selberg_residual(i64 m, i64 n1, i64 n2, i64 q) {
  const cplx lhs = gen_kloosterman(m, n1, n2, q).value;
  const i64 g = gcd(gcd(m, n1), q);
  CompensatedSum<cplx> rhs;
  for (i64 d : factorize(g).divisors())
    rhs += static_cast<double>(d) * gen_kloosterman(1, (m / d) * (n1 / d), n2, q / d).value;
  return std::abs(lhs - rhs.value());
}

i64 ab_solution_count(i64 m, i64 q, const SpfSieve* sieve) {
  if (q < 1) throw DomainError("ab_solution_count: q must be positive");
  const Factorization f = sieve && q <= sieve->limit() ? sieve->factorize(q) : factorize(q);
  i64 total = 1;
  for (auto [p, e] : f.factors) total *= ab_count_prime_power(p, e, m);
  return total;
}

std::vector<i64> pair_counts_by_sum(i64 m, i64 q) {
  if (q < 1) throw DomainError("pair_counts_by_sum: q must be positive");
  std::vector<i64> counts(static_cast<std::size_t>(q), 0);
  const i64 mr = mod(m, q);
  for (i64 a = 0; a < q; ++a) {
    const i64 g = gcd(a, q);  // gcd(0, q) = q
    if (mr % g != 0) continue;
    const i64 qg = q / g;
    const i64 b0 = qg == 1 ? 0 : mul_mod(mr / g, mod_inverse((a / g) % qg, qg), qg);
    for (i64 t = 0; t < g; ++t) ++counts[(a + b0 + t * qg) % q];
  }
  return counts;
}

std::vector<double> diagonal_kloosterman_table(i64 m, i64 q) {
  // S(m, n, n; q) = sum_c N(c) e(nc/q) with N(c) the pair count by a + b = c.
  const auto counts = pair_counts_by_sum(m, q);
  std::vector<double> out(static_cast<std::size_t>(q));
  if (q < 64) {
    const auto phase = phase_table(q);
    for (i64 n = 0; n < q; ++n) {
      CompensatedSum<double> acc;
      for (i64 c = 0; c < q; ++c)
        if (counts[c]) acc += static_cast<double>(counts[c]) * phase[(n * c) % q].real();
      out[n] = acc.value();
    }
    return out;
  }
  const int len = static_cast<int>(q);
  double* in = fftw_alloc_real(len);
  fftw_complex* spec = fftw_alloc_complex(len / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(len, in, spec, FFTW_ESTIMATE);
  }
  for (int c = 0; c < len; ++c) in[c] = static_cast<double>(counts[c]);
  fftw_execute(plan);
  // N(c) = N(-c) (swap a, b with a -> -a, b -> -b), so the transform is real.
  for (int n = 0; n <= len / 2; ++n) {
    out[n] = spec[n][0];
    if (n > 0) out[len - n] = spec[n][0];
  }
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

std::vector<double> kloosterman_row_table(i64 n2, i64 q) {
  // S(m, n2; q) = sum_{a unit} e(n2 a^{-1}/q) e(m a/q) as a function of m.
  const auto phase = phase_table(q);
  std::vector<cplx> g(static_cast<std::size_t>(q), 0.0);
  for (i64 a = 0; a < q; ++a)
    if (gcd(a, q) == 1) g[a] = phase[mul_mod(n2, mod_inverse(a, q), q)];
  if (q == 1) g[0] = 1.0;
  std::vector<double> out(static_cast<std::size_t>(q));
  if (q < 64) {
    for (i64 m = 0; m < q; ++m) {
      CompensatedSum<cplx> acc;
      for (i64 a = 0; a < q; ++a) acc += g[a] * phase[(m * a) % q];
      out[m] = acc.value().real();
    }
    return out;
  }
  const int len = static_cast<int>(q);
  fftw_complex* buf = fftw_alloc_complex(len);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (int a = 0; a < len; ++a) {
    buf[a][0] = g[a].real();
    buf[a][1] = g[a].imag();
  }
  fftw_execute(plan);
  for (int m = 0; m < len; ++m) out[m] = buf[m][0];
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

}  // namespace gdl::arith
