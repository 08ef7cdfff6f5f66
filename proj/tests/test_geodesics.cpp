#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "gdl/geodesics.hpp"

using namespace gdl;
using namespace gdl::geodesics;

namespace {

using Form = std::tuple<i64, i64, i64>;

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Primitive forms with |a|, |b| <= box, joined under S and T; classes are
// the components holding a reduced form.
i64 brute_class_number(i64 delta) {
  const i64 box = delta + 10;
  std::map<Form, int> id;
  UnionFind uf;
  for (i64 a = -box; a <= box; ++a) {
    if (a == 0) continue;
    for (i64 b = -box; b <= box; ++b) {
      const i64 num = b * b - delta;
      if (num % (4 * a)) continue;
      const i64 c = num / (4 * a);
      if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
      id.emplace(Form{a, b, c}, uf.add());
    }
  }
  for (const auto& [f, i] : id) {
    const auto [a, b, c] = f;
    for (const Form g : {Form{c, -b, a}, Form{a, b + 2 * a, a + b + c}}) {
      const auto it = id.find(g);
      if (it != id.end()) uf.unite(i, it->second);
    }
  }
  const double root = std::sqrt(static_cast<double>(delta));
  std::set<int> classes;
  for (const auto& [f, i] : id) {
    const auto [a, b, c] = f;
    if (b > 0 && b < root && root - b < 2.0 * std::abs(a) && 2.0 * std::abs(a) < root + b) classes.insert(uf.find(i));
  }
  return static_cast<i64>(classes.size());
}

bool square(i64 n) {
  const i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

}  // namespace

TEST_CASE("discriminant validation") {
  CHECK_NOTHROW(check_discriminant(5));
  CHECK_NOTHROW(check_discriminant(12));
  CHECK_THROWS_AS(check_discriminant(9), DomainError);
  CHECK_THROWS_AS(check_discriminant(7), DomainError);
  CHECK_THROWS_AS(check_discriminant(-4), DomainError);
}

TEST_CASE("fundamental Pell solutions") {
  CHECK(pell_fundamental(5) == std::pair<i64, i64>{3, 1});
  CHECK(pell_fundamental(8) == std::pair<i64, i64>{6, 2});
  CHECK(pell_fundamental(12) == std::pair<i64, i64>{4, 1});
  CHECK(pell_fundamental(13) == std::pair<i64, i64>{11, 3});
  int too_large = 0;
  for (i64 d = 5; d <= 10000; ++d) {
    if (d % 4 > 1 || square(d)) continue;
    INFO("delta=" << d);
    std::pair<i64, i64> tu;
    try {
      tu = pell_fundamental(d);
    } catch (const DomainError&) {
      ++too_large;
      continue;
    }
    const auto [t, u] = tu;
    REQUIRE(u > 0);
    CHECK(static_cast<__int128>(t) * t - static_cast<__int128>(d) * u * u == 4);
    if (u <= 200000)
      for (i64 v = 1; v < u; ++v) CHECK_FALSE(square(d * v * v + 4));
  }
  // the 2^61 guard trips for a minority of discriminants
  CHECK(too_large < 2000);
}

TEST_CASE("class numbers against a brute-force equivalence search") {
  CHECK(form_class_number(5) == 1);
  CHECK(form_class_number(12) == 2);
  CHECK(form_class_number(40) == 2);
  CHECK(form_class_number(229) == 3);
  for (i64 d = 5; d <= 500; ++d) {
    if (d % 4 > 1 || square(d)) continue;
    INFO("delta=" << d);
    CHECK(form_class_number(d) == brute_class_number(d));
  }
}

TEST_CASE("census: direct enumeration equals the L-function sum") {
  const double xs[] = {7, 8, 20, 50, 51, 100, 197, 200, 500, 1000, 1500, 2000, 4000, 8000, 10000, 15000, 20000, 40000, 70000, 100000};
  for (double x : xs) {
    const auto c = psi_direct(x);
    const double via = psi_via_l(x);
    INFO("x=" << x);
    CHECK(c.psi == doctest::Approx(via).epsilon(1e-10));
  }
  const auto small = psi_direct(7.0);
  REQUIRE(small.per_delta.size() == 1);
  CHECK(small.per_delta[0].delta == 5);
  CHECK(small.psi == doctest::Approx(2.0 * std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));
  CHECK(psi_direct(6.0).psi == 0.0);
  CHECK_THROWS_AS(psi_direct(2e6), DomainError);
}

TEST_CASE("prime geodesic error table") {
  const auto rows = pgt_error_table({1000.0, 10000.0, 100000.0});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.err == doctest::Approx(r.psi - r.x));
    CHECK(std::abs(r.err_normalized) < 5.0);
  }
}
