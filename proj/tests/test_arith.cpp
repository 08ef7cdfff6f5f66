#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/prime.hpp>

#include "gdl/arith.hpp"

using namespace gdl;
using namespace gdl::arith;

namespace {

i64 brute_phi(i64 n) {
  i64 c = 0;
  for (i64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

int brute_mobius(i64 n) {
  int mu = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

i64 brute_ab_count(i64 m, i64 q) {
  i64 c = 0;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b) c += mod(a * b - m, q) == 0;
  return c;
}

}  // namespace

TEST_CASE("factorization and multiplicative functions") {
  for (i64 n = 1; n <= 2000; ++n) {
    const auto f = factorize(n);
    i64 prod = 1;
    for (auto [p, e] : f.factors)
      for (int i = 0; i < e; ++i) prod *= p;
    CHECK(prod == n);
    CHECK(mobius(f) == brute_mobius(n));
    CHECK(euler_phi(f) == brute_phi(n));
  }
  CHECK(factorize(600851475143LL).factors.back().first == 6857);
  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("sieve agrees with trial division and boost primes") {
  const SpfSieve sieve(10000);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(sieve.primes()[i] == static_cast<i64>(boost::math::prime(static_cast<unsigned>(i))));
  for (i64 n = 2; n <= 10000; n += 7) CHECK(sieve.factorize(n).factors == factorize(n).factors);
}

TEST_CASE("modular helpers") {
  CHECK(mod(-7, 5) == 3);
  CHECK(gcd(0, 12) == 12);
  for (i64 q = 2; q <= 60; ++q)
    for (i64 a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) CHECK(mul_mod(a, mod_inverse(a, q), q) == 1 % q);
  CHECK(pow_mod(3, 200, 1000000007) == 136318165);
  CHECK(isqrt(99) == 9);
  CHECK(is_square(144));
  CHECK_FALSE(is_square(-4));
}

TEST_CASE("rho: CRT route equals exhaustive count") {
  for (i64 q = 1; q <= 80; ++q)
    for (i64 n = -80; n <= 80; ++n) CHECK(rho(q, n) == rho_brute(q, n));
}

TEST_CASE("rho_table matches pointwise rho") {
  const SpfSieve sieve(500);
  for (i64 n : {-23, -4, 0, 1, 5, 12, 21, 77}) {
    const auto t = rho_table(n, 500, sieve);
    for (i64 q = 1; q <= 500; ++q) CHECK(t[q] == rho(q, n));
  }
}

TEST_CASE("square roots modulo prime powers") {
  for (i64 p : {2, 3, 5, 7})
    for (int k = 1; k <= 4; ++k) {
      i64 pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      for (i64 n = 0; n < pk; ++n) {
        i64 c = 0;
        for (i64 x = 0; x < pk; ++x) c += mod(x * x - n, pk) == 0;
        CHECK(sqrt_count_prime_power(p, k, n) == c);
      }
    }
}

TEST_CASE("generalized Kloosterman sums") {
  SUBCASE("fast route equals exhaustive enumeration") {
    for (i64 q = 1; q <= 30; ++q)
      for (i64 m : {0, 1, 4, 6})
        for (i64 n1 : {0, 1, 3})
          for (i64 n2 : {0, 2, 5}) CHECK(std::abs(gen_kloosterman(m, n1, n2, q).value - gen_kloosterman_exhaustive(m, n1, n2, q)) < 1e-9);
  }
  SUBCASE("symmetric in its three arguments and real") {
    for (i64 q = 1; q <= 40; ++q)
      for (i64 a = 1; a <= 5; ++a)
        for (i64 b = 1; b <= 5; ++b) {
          const cplx s = gen_kloosterman(a, b, 3, q).value;
          CHECK(std::abs(s - gen_kloosterman(b, a, 3, q).value) < 1e-9);
          CHECK(std::abs(s - gen_kloosterman(3, b, a, q).value) < 1e-9);
          CHECK(std::abs(s.imag()) < 1e-9);
        }
  }
  SUBCASE("Selberg decomposition") {
    for (i64 q = 1; q <= 60; ++q)
      for (i64 m = 1; m <= 6; ++m)
        for (i64 n1 = 1; n1 <= 6; ++n1) CHECK(selberg_residual(m, n1, 4, q) < 1e-8);
  }
  SUBCASE("Weil bound at primes") {
    for (unsigned i = 1; i < 60; ++i) {
      const i64 p = boost::math::prime(i);
      for (i64 a = 1; a <= 4; ++a) CHECK(std::abs(kloosterman(a, 1, p).value) <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
    }
  }
  SUBCASE("Ramanujan sums") {
    for (i64 q = 1; q <= 60; ++q)
      for (i64 n = 0; n <= 30; ++n) {
        double c = 0.0;
        const i64 g = n == 0 ? q : std::gcd(n, q);
        for (i64 d = 1; d <= g; ++d)
          if (g % d == 0 && q % d == 0) c += brute_mobius(q / d) * static_cast<double>(d);
        CHECK(ramanujan(n, q) == doctest::Approx(c));
      }
  }
}

TEST_CASE("pair counts and tables") {
  for (i64 q = 1; q <= 90; ++q)
    for (i64 m : {1, 4, 9, 12}) {
      const i64 total = brute_ab_count(m, q);
      CHECK(ab_solution_count(m, q) == total);
      const auto counts = pair_counts_by_sum(m, q);
      CHECK(std::accumulate(counts.begin(), counts.end(), i64{0}) == total);
      const auto diag = diagonal_kloosterman_table(m, q);
      for (i64 n : {i64{0}, i64{1}, i64{2}, q - 1}) CHECK(diag[mod(n, q)] == doctest::Approx(gen_kloosterman(m, n, n, q).value.real()).epsilon(1e-9).scale(q));
    }
  for (i64 q : {7, 64, 97, 150}) {
    const auto row = kloosterman_row_table(1, q);
    for (i64 m = 0; m < q; m += 5) CHECK(row[m] == doctest::Approx(kloosterman(m, 1, q).value.real()).scale(q));
  }
}

TEST_CASE("divisor power sums") {
  CHECK(sigma_pow(1.0, 12).real() == doctest::Approx(28.0));
  CHECK(sigma_pow(-2.0, 4).real() == doctest::Approx(1.0 + 0.25 + 0.0625));
  CHECK(sigma_pow(0.0, 36).real() == doctest::Approx(9.0));
}

TEST_CASE("Weil-type bound at primes up to 997") {
  const SpfSieve sieve(1000);
  for (i64 p : sieve.primes())
    for (i64 n1 : {1, 2, 5})
      for (i64 n2 : {i64{1}, i64{3}, p}) {
        const double g = static_cast<double>(std::gcd(std::gcd(n1, n2), p));
        CHECK(std::abs(kloosterman(n1, n2, p).value) <= 2.0 * std::sqrt(g) * std::sqrt(static_cast<double>(p)) + 1e-9);
      }
}

TEST_CASE("rho is multiplicative in q") {
  for (i64 q1 = 1; q1 <= 30; ++q1)
    for (i64 q2 = 1; q2 <= 30; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (i64 n : {-7, -4, 0, 1, 5, 8, 12}) CHECK(rho(q1 * q2, n) == rho(q1, n) * rho(q2, n));
    }
}
