#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "gdl/transforms.hpp"

using namespace gdl;
using namespace gdl::transforms;

namespace {

// adaptive Gauss-Kronrod over the support split at the breakpoints
template <typename F>
double gk(F f, const WindowSpec& w) {
  std::vector<double> pts{w.lower()};
  for (double b : w.breakpoints()) pts.push_back(b);
  pts.push_back(w.upper());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 15, 1e-13);
  return total;
}

const std::vector<WindowSpec>& windows() {
  static const std::vector<WindowSpec> ws{WindowSpec::bump(3, 10), WindowSpec::bump(2.5, 6, 2.0),
                                          WindowSpec::transition(3, 12, 2, 3), WindowSpec::plateau(40, 10)};
  return ws;
}

}  // namespace

TEST_CASE("window grammar round-trips") {
  for (const char* text : {"bump:3,10", "bump:2.5,6,2", "transition:3,12,2,3", "plateau:1000,250", "gaussian:50,5",
                           "bump:3,10*2.5"}) {
    const WindowSpec w = WindowSpec::parse(text);
    const WindowSpec back = WindowSpec::parse(w.to_string());
    for (double x : {2.0, 3.5, 5.0, 9.0, 45.0, 300.0, 900.0}) CHECK(window_eval(back, x) == window_eval(w, x));
  }
  for (const char* bad : {"", "bump", "bump:3", "bump:10,3", "square:1,2", "plateau:10,30", "bump:3,x", "gaussian:5,0"})
    CHECK_THROWS_AS(WindowSpec::parse(bad), ConfigError);
}

TEST_CASE("window shapes") {
  const WindowSpec p = WindowSpec::plateau(1000, 250);
  CHECK(window_eval(p, 100) == 0.0);
  CHECK(window_eval(p, 250) == doctest::Approx(1.0));
  CHECK(window_eval(p, 500) == 1.0);
  CHECK(window_eval(p, 750) == doctest::Approx(1.0));
  CHECK(window_eval(p, 1000.5) == 0.0);
  const WindowSpec b = WindowSpec::bump(3, 10);
  CHECK(window_eval(b, 6.5) == doctest::Approx(std::exp(-1.0)));
  CHECK(window_eval(b, 3.0) == 0.0);
  CHECK(window_eval(WindowSpec::parse("bump:3,10*4"), 6.5) == doctest::Approx(4.0 * std::exp(-1.0)));
  for (const auto& w : windows())
    for (double x = w.lower(); x <= w.upper(); x += 0.37) {
      CHECK(window_eval(w, x) >= 0.0);
      CHECK(window_eval(w, x) <= w.amplitude + 1e-15);
    }
}

TEST_CASE("zeroth moment against Gauss-Kronrod") {
  for (const auto& w : windows()) {
    const double want = gk([&](double x) { return window_eval(w, x); }, w);
    CHECK(window_moment0(w).value.real() == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("cosine transform routes") {
  for (const auto& w : windows()) {
    const auto ct = CosineTransform::of_window(w, 60.0);
    const auto sampled = window_cosine(w);
    for (double t : {0.0, 0.3, 1.7, 5.0, 12.0, 30.0}) {
      const double want = gk([&](double x) { return window_eval(w, x) * std::cos(t * x); }, w);
      CHECK(ct(t) == doctest::Approx(want).epsilon(1e-9).scale(ct.l1_norm()));
      CHECK((*sampled)(t) == doctest::Approx(want).epsilon(1e-9).scale(ct.l1_norm()));
      const double h = 1e-5;
      CHECK(ct.deriv(t) == doctest::Approx((ct(t + h) - ct(t - h)) / (2 * h)).epsilon(1e-6).scale(ct.l1_norm()));
    }
    CHECK(sampled->cutoff(1e-10) > 0.0);
    CHECK(sampled->cutoff(1e-10) <= sampled->t_cut);
  }
  CHECK(window_cosine(windows()[0]).get() == window_cosine(windows()[0]).get());
}

TEST_CASE("f weight is a scaled cosine transform") {
  const WindowSpec w = WindowSpec::bump(3, 10);
  for (int l : {1, 2, 3})
    for (double x : {0.5, 4.0, 17.0}) {
      const cplx s(1.3, 0.4);
      const double c = gk([&](double y) { return window_eval(w, y) * std::cos(x * y / (2.0 * l)); }, w);
      const cplx want = 2.0 / std::sqrt(kPi) * std::pow(cplx(x / (4.0 * l)), s) * c;
      CHECK(std::abs(f_weight(w, s, l, x) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("g and h: integral and hypergeometric routes agree") {
  for (const auto& w : windows())
    for (cplx s : {cplx(0.7, 0.0), cplx(1.0, 0.0), cplx(1.2, 3.0)})
      for (int l : {1, 2}) {
        INFO(w.to_string() << " s=" << s << " l=" << l);
        for (int k : {1, 2, 5}) {
          const auto a = g_weight(w, s, l, k, GMethod::integral);
          const auto b = g_weight(w, s, l, k, GMethod::hypergeometric);
          CHECK(std::abs(a.value - b.value) <= std::max(1e-9, 10.0 * (a.err + b.err)));
        }
        for (double r : {0.0, 1.5, 8.0}) {
          const auto a = h_weight(w, s, l, r, HMethod::integral);
          const auto b = h_weight(w, s, l, r, HMethod::hypergeometric);
          CHECK(std::abs(a.value - b.value) <= std::max(1e-9, 10.0 * (a.err + b.err)));
        }
      }
}

TEST_CASE("closed form at s = 1") {
  for (const auto& w : windows())
    for (double r : {0.0, 0.8, 3.0, 11.0}) {
      const auto a = h_weight(w, 1.0, 1, r, HMethod::closed_s1);
      const auto b = h_weight(w, 1.0, 1, r, HMethod::hypergeometric);
      CHECK(std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(b.value)));
    }
}

TEST_CASE("special point matches the hypergeometric split") {
  for (cplx s : {cplx(0.6, 0.0), cplx(0.8, 1.0), cplx(0.9, -0.5)})
    for (int l : {1, 2}) {
      const WindowSpec w = WindowSpec::bump(3, 10);
      const cplx r = (s - 1.0) / cplx(0.0, 2.0);
      const auto a = h_special_point(w, s, l);
      const auto b = h_weight(w, s, l, r, HMethod::hypergeometric);
      INFO("s=" << s << " l=" << l);
      CHECK(std::abs(a.value - b.value) <= 1e-8 * std::max(1.0, std::abs(a.value)));
    }
}

TEST_CASE("integral of h over r vanishes") {
  for (const char* text : {"bump:3,10", "transition:3,12,2,3", "bump:1,1.9"}) {
    const auto e = h_integral_zero(WindowSpec::parse(text));
    INFO(text);
    CHECK(std::abs(e.value) <= std::max(1e-9, e.err));
    CHECK(e.warning.empty());
  }
  const auto slow = h_integral_zero(WindowSpec::bump(1, 4));
  CHECK_FALSE(slow.warning.empty());
}

TEST_CASE("decay of g in k and of h in r") {
  const WindowSpec w = WindowSpec::bump(3, 10);
  for (cplx s : {cplx(1.0), cplx(0.5)}) {
    // least-squares slope of log|g| against k
    double sk = 0, sl = 0, skk = 0, skl = 0;
    int n = 0;
    for (int k = 4; k <= 14; ++k, ++n) {
      const double lg = std::log(std::abs(g_weight(w, s, 1, k, GMethod::integral).value));
      sk += k, sl += lg, skk += k * k, skl += k * lg;
    }
    const double slope = (n * skl - sk * sl) / (n * skk - sk * sk);
    INFO("s=" << s << " slope=" << slope);
    CHECK(slope < 0.0);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double r = 10.0; r <= 100.0; r *= 1.2589, ++n) {
    const double lx = std::log(r), ly = std::log(std::abs(h_weight(w, 0.5, 1, r, HMethod::integral).value));
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  INFO("h slope " << slope);
  CHECK(slope <= -1.4);
}
