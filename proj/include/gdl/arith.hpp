#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gdl/common.hpp"

namespace gdl::arith {

using i64 = std::int64_t;

/// Trial-division bound; integers with a prime factor above it are rejected.
inline constexpr i64 kTrialDivisionLimit = 10'000'000;

struct Factorization {
  i64 n = 1;
  std::vector<std::pair<i64, int>> factors;  // strictly increasing primes

  std::vector<i64> divisors() const;  // ascending
  int omega() const { return static_cast<int>(factors.size()); }
  bool squarefree() const;
};

/// Factors n >= 1. Throws DomainError when a prime factor exceeds the trial
/// division limit.
Factorization factorize(i64 n);

i64 gcd(i64 a, i64 b);
/// Non-negative residue of a modulo m > 0.
i64 mod(i64 a, i64 m);
/// Inverse of a modulo m; requires gcd(a, m) == 1.
i64 mod_inverse(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, i64 exp, i64 m);
int mobius(const Factorization& f);
i64 euler_phi(const Factorization& f);
/// Integer square root, floor(sqrt(n)) for n >= 0.
i64 isqrt(i64 n);
bool is_square(i64 n);

/// Smallest-prime-factor table for [0, limit].
class SpfSieve {
 public:
  explicit SpfSieve(i64 limit);
  i64 limit() const { return static_cast<i64>(spf_.size()) - 1; }
  i64 spf(i64 n) const { return spf_[static_cast<std::size_t>(n)]; }
  const std::vector<i64>& primes() const { return primes_; }
  Factorization factorize(i64 n) const;

 private:
  std::vector<i64> spf_;
  std::vector<i64> primes_;
};

// --- representation counts -------------------------------------------------

/// #{x mod 2q : x^2 = n mod 4q}, by exhaustive search.
i64 rho_brute(i64 q, i64 n);
/// Same count through CRT on 4q and prime-power square-root counts.
i64 rho(i64 q, i64 n);
/// #{x mod p^k : x^2 = n mod p^k} for a prime p.
i64 sqrt_count_prime_power(i64 p, int k, i64 n);
/// rho_q(n) for every q in [0, qmax] (entry 0 unused) using a multiplicative sieve.
std::vector<i64> rho_table(i64 n, i64 qmax, const SpfSieve& sieve);

/// sum_{d | n} d^s.
cplx sigma_pow(cplx s, i64 n);

// --- exponential sums ------------------------------------------------------

struct KloostermanValue {
  cplx value{};
  i64 q = 1;
  i64 m = 1;
  i64 n1 = 0;
  i64 n2 = 0;
};

/// Classical Kloosterman sum S(n1, n2; q).
KloostermanValue kloosterman(i64 n1, i64 n2, i64 q);
/// Generalized sum S(m, n1, n2; q) = sum_{ab = m (q)} e((a n1 + b n2)/q).
/// Runs over a in [1, q] and solves for b in each residue class.
KloostermanValue gen_kloosterman(i64 m, i64 n1, i64 n2, i64 q);
/// O(q^2) enumeration of the same sum over all pairs (a, b); test oracle.
cplx gen_kloosterman_exhaustive(i64 m, i64 n1, i64 n2, i64 q);
/// Ramanujan sum c_q(n) = S(0, n; q).
double ramanujan(i64 n, i64 q);
/// Residual of the Selberg decomposition
/// S(m,n1,n2;q) = sum_{d | (m,n1,q)} d S(1, m n1/d^2, n2; q/d).
double selberg_residual(i64 m, i64 n1, i64 n2, i64 q);

/// #{(a, b) mod q : ab = m mod q}, i.e. S(m, 0, 0; q), from the multiplicative
/// prime-power formula.
i64 ab_solution_count(i64 m, i64 q, const SpfSieve* sieve = nullptr);

/// counts[c] = #{(a, b) mod q : ab = m, a + b = c mod q}.
std::vector<i64> pair_counts_by_sum(i64 m, i64 q);

/// S(m, n, n; q) for every n mod q (the sum is real and depends on n mod q).
std::vector<double> diagonal_kloosterman_table(i64 m, i64 q);

/// S(m, n2; q) for every m mod q.
std::vector<double> kloosterman_row_table(i64 n2, i64 q);

}  // namespace gdl::arith
