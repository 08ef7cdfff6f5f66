// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// here. Usage: acceptance [--known-failures 8,...] [--threads N]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/geodesics.hpp"
#include "gdl/glfunc.hpp"
#include "gdl/identities.hpp"
#include "gdl/report.hpp"
#include "gdl/specfun.hpp"
#include "gdl/transforms.hpp"

using namespace gdl;
using report::json;
using transforms::WindowSpec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  json record = json::object();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double max_seconds;
  std::function<Outcome(const ExecContext&)> run;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_or_abs(cplx a, cplx b, double rel, double abs_floor) {
  const double d = std::abs(a - b);
  return std::min(d / (rel * std::max(std::abs(b), 1e-300)), d / abs_floor);
}

// 1. Kloosterman identities and rho
Outcome exact_arithmetic(const ExecContext&) {
  constexpr double kTol = 1e-8;
  Outcome o;
  double selberg = 0.0, perm = 0.0;
  for (arith::i64 q = 1; q <= 100; ++q)
    for (arith::i64 m = 1; m <= 20; ++m)
      for (arith::i64 a = 1; a <= 20; ++a)
        for (arith::i64 b = 1; b <= 20; ++b) {
          selberg = std::max(selberg, arith::selberg_residual(m, a, b, q));
          if (m > a || a > b) continue;
          const cplx base = arith::gen_kloosterman(m, a, b, q).value;
          for (const auto& v : {arith::gen_kloosterman(m, b, a, q).value, arith::gen_kloosterman(a, m, b, q).value,
                                arith::gen_kloosterman(a, b, m, q).value, arith::gen_kloosterman(b, m, a, q).value,
                                arith::gen_kloosterman(b, a, m, q).value})
            perm = std::max(perm, std::abs(v - base));
        }
  long rho_mismatch = 0;
  for (arith::i64 q = 1; q <= 200; ++q)
    for (arith::i64 n = -200; n <= 200; ++n) rho_mismatch += arith::rho(q, n) != arith::rho_brute(q, n);
  o.require(selberg <= kTol, "selberg residual " + sci(selberg));
  o.require(perm <= kTol, "permutation residual " + sci(perm));
  o.require(rho_mismatch == 0, std::to_string(rho_mismatch) + " rho mismatches");
  o.record = {{"selberg", selberg}, {"permutation", perm}, {"rho_mismatch", rho_mismatch}};
  if (o.pass) o.detail = "selberg " + sci(selberg) + ", permutation " + sci(perm) + ", rho exact";
  return o;
}

// 2. main-term identity
Outcome main_term(const ExecContext&) {
  constexpr double kTol = 1e-5;
  Outcome o;
  o.record = json::array();
  double worst = 0.0;
  for (arith::i64 l : {1, 2, 3}) {
    const auto r = identities::main_term_identity(2.0, l, 100000, kTol);
    worst = std::max(worst, r.residual);
    o.require(r.residual <= kTol, "l=" + std::to_string(l) + " residual " + sci(r.residual));
    o.record.push_back(report::to_json(r));
  }
  if (o.pass) o.detail = "max relative residual " + sci(worst);
  return o;
}

// 3. generalized L-functions
Outcome l_functions(const ExecContext& ctx) {
  constexpr double kTol = 1e-6;
  Outcome o;
  double chi = 0.0, zero = 0.0, fe = 0.0;
  for (arith::i64 D : {5, 8, 12, 13, -4, -8})
    for (double s : {1.5, 2.0}) {
      const cplx direct = glfunc::l_series_direct(D, s, 100000).value;
      const cplx dirichlet = glfunc::l_chi(s, D, glfunc::LRoute::hurwitz).value;
      const cplx cont = glfunc::l_value(D, s).result.value;
      chi = std::max({chi, std::abs(direct - dirichlet), std::abs(cont - dirichlet)});
    }
  for (cplx s : {cplx(2.0, 0.0), cplx(2.5, 0.0), cplx(2.0, 1.0)})
    zero = std::max(zero, std::abs(glfunc::l_series_direct(0, s, 100000).value - specfun::zeta(2.0 * s - 1.0).value));
  for (cplx s : {cplx(1.5, 0.0), cplx(0.3, 0.2), cplx(0.75, 4.0)})
    zero = std::max(zero, std::abs(glfunc::l_value(0, s).result.value - specfun::zeta(2.0 * s - 1.0).value));
  const std::vector<arith::i64> ns{5, 8, 12, 13, -4, -8, -3, -7, 21, -20, 45, -52, 100, -104, 1000, -1003, 5000, -5003, 9997, -9999};
  for (cplx s : {cplx(0.3, 0.0), cplx(0.3, 0.2)}) {
    const auto res = parallel_map<double>(ctx, ns.size(), [&](std::size_t i) { return glfunc::fe_residual(ns[i], s); });
    fe = std::max(fe, *std::max_element(res.begin(), res.end()));
  }
  o.require(chi <= kTol, "L_D vs L(s, chi_D) " + sci(chi));
  o.require(zero <= kTol, "L_0 vs zeta(2s-1) " + sci(zero));
  o.require(fe <= kTol, "functional equation " + sci(fe));
  o.record = {{"chi", chi}, {"zero", zero}, {"fe", fe}};
  if (o.pass) o.detail = "chi " + sci(chi) + ", L_0 " + sci(zero) + ", fe " + sci(fe);
  return o;
}

// 4. transform cross-validation
Outcome transforms_cross(const ExecContext&) {
  using namespace transforms;
  constexpr double kRel = 1e-6, kAbs = 1e-9, kZero = 1e-6;
  Outcome o;
  double score = 0.0, even = 0.0;
  for (const char* text : {"bump:3,10", "bump:5,8", "transition:3,12,2,3"}) {
    const WindowSpec w = WindowSpec::parse(text);
    for (cplx s : {cplx(1.2), cplx(1.0), cplx(0.8), cplx(0.501)})
      for (int l : {1, 2}) {
        for (int k = 6; k <= 12; ++k)
          score = std::max(score, rel_or_abs(g_weight(w, s, l, k, GMethod::integral).value,
                                             g_weight(w, s, l, k, GMethod::hypergeometric).value, kRel, kAbs));
        for (double r : {0.0, 0.5, 1.0, 5.0, 20.0}) {
          const cplx hh = h_weight(w, s, l, r, HMethod::hypergeometric).value;
          score = std::max(score, rel_or_abs(h_weight(w, s, l, r, HMethod::integral).value, hh, kRel, kAbs));
          if (s == cplx(1.0) && l == 1)
            score = std::max(score, rel_or_abs(h_weight(w, s, l, r, HMethod::closed_s1).value, hh, kRel, kAbs));
          even = std::max(even, std::abs(h_weight(w, s, l, -r, HMethod::hypergeometric).value - hh));
        }
      }
  }
  double zero = 0.0, special = 0.0;
  for (const char* text : {"bump:3,10", "bump:5,8"}) {
    const WindowSpec w = WindowSpec::parse(text);
    zero = std::max(zero, std::abs(h_integral_zero(w).value));
    for (int l : {1, 2}) {
      const cplx s = 0.8;
      const cplx a = h_special_point(w, s, l).value;
      const cplx b = h_weight(w, s, l, (s - 1.0) / cplx(0.0, 2.0), HMethod::hypergeometric).value;
      special = std::max(special, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  }
  o.require(score <= 1.0, "route disagreement at " + sci(score) + " x tolerance");
  o.require(even <= 1e-8, "evenness " + sci(even));
  o.require(zero <= kZero, "h integral " + sci(zero));
  o.require(special <= kRel, "special point " + sci(special));
  o.record = {{"score", score}, {"even", even}, {"h_zero", zero}, {"special", special}};
  if (o.pass)
    o.detail = "worst/tolerance " + sci(score) + ", h integral " + sci(zero) + ", special point " + sci(special);
  return o;
}

// 5. convolution formula
Outcome convolution(const ExecContext& ctx) {
  constexpr double kTol = 1e-3;
  Outcome o;
  o.record = json::array();
  double worst = 0.0;
  for (const char* text : {"bump:3,10", "bump:5,8"})
    for (double s : {2.0, 2.5})
      for (arith::i64 l : {1, 2}) {
        const auto r = identities::convolution_residual(WindowSpec::parse(text), s, l, 200, 5000, kTol, ctx);
        worst = std::max(worst, r.residual);
        o.require(r.passed && r.residual <= kTol,
                  std::string(text) + " s=" + sci(s) + " l=" + std::to_string(l) + " residual " + sci(r.residual));
        o.record.push_back(report::to_json(r));
      }
  if (o.pass) o.detail = "max residual " + sci(worst) + " over 8 configurations";
  return o;
}

// 6. Lerch-moment identity
Outcome lerch_moment(const ExecContext& ctx) {
  constexpr double kTol = 1e-4;
  Outcome o;
  const auto r = identities::lerch_moment_identity(2.0, 2.0, 1, 2000, kTol, ctx);
  o.require(r.residual <= kTol, "residual " + sci(r.residual));
  o.record = report::to_json(r);
  if (o.pass) o.detail = "residual " + sci(r.residual);
  return o;
}

// 7. prime geodesic census
Outcome census(const ExecContext& ctx) {
  constexpr double kTol = 1e-4;
  constexpr double kAnchor = 1.9248;
  Outcome o;
  double worst = 0.0;
  json rows = json::array();
  for (int i = 0; i < 20; ++i) {
    const double x = std::round(10.0 * std::pow(10.0, 4.0 * i / 19.0));
    const double direct = geodesics::psi_direct(x, ctx).psi;
    const double via = geodesics::psi_via_l(x, ctx);
    const double rel = std::abs(direct - via) / std::max(1.0, direct);
    worst = std::max(worst, rel);
    rows.push_back({x, direct, via});
  }
  const double a = geodesics::psi_direct(7.0, ctx).psi, b = geodesics::psi_via_l(7.0, ctx);
  o.require(worst <= kTol, "census residual " + sci(worst));
  o.require(std::abs(a - kAnchor) <= 5e-4 && std::abs(b - kAnchor) <= 5e-4, "anchor x=7 gave " + sci(a) + ", " + sci(b));
  o.record = {{"rows", rows}, {"anchor", {a, b}}};
  if (o.pass) o.detail = "max relative residual " + sci(worst) + ", psi(7) = " + std::to_string(a).substr(0, 6);
  return o;
}

// 8. sharp-cutoff moment trend
Outcome t13(const ExecContext& ctx) {
  constexpr double kFinalRel = 0.05;
  constexpr double kNormBound = 1.0;
  Outcome o;
  o.record = json::array();
  std::vector<double> rel;
  double norm = 0.0;
  for (double X : {500.0, 1000.0, 2000.0}) {
    const auto r = identities::t13_check(X, {}, ctx);
    rel.push_back(r.metrics[0].second);
    norm = std::max(norm, std::abs(r.metrics[1].second));
    o.record.push_back(report::to_json(r));
  }
  std::string list;
  for (double v : rel) list += (list.empty() ? "" : ", ") + sci(v);
  o.require(std::is_sorted(rel.rbegin(), rel.rend()), "relative errors not monotone: " + list);
  o.require(rel.back() <= kFinalRel, "relative error at X=2000 is " + sci(rel.back()));
  o.require(norm <= kNormBound, "normalized residual " + sci(norm));
  if (o.pass) o.detail = "relative errors " + list + ", max normalized residual " + sci(norm);
  else o.detail += " (final " + sci(rel.back()) + " <= 0.05, max normalized residual " + sci(norm) + ")";
  return o;
}

// 9. smoothed moment bound
Outcome t14(const ExecContext& ctx) {
  constexpr double kSpread = 3.0;
  Outcome o;
  o.record = json::array();
  double lo = INFINITY, hi = 0.0;
  for (double X : {1e3, 1e4}) {
    const auto r = identities::smoothed_bound_t14(X, std::pow(X, 0.7), ctx);
    const double ratio = std::abs(r.metrics[0].second);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    o.record.push_back(report::to_json(r));
  }
  o.require(std::isfinite(hi) && hi <= kSpread * lo, "sum/T ranges over " + sci(lo) + " .. " + sci(hi));
  if (o.pass) o.detail = "sum/T in [" + sci(lo) + ", " + sci(hi) + "]";
  return o;
}

// 10. hypergeometric asymptotic
Outcome hyper_asymptotic(const ExecContext&) {
  constexpr double kC = 1.0;
  constexpr double kDoubling = 3.5;
  Outcome o;
  const cplx i(0.0, 1.0);
  auto err = [&](double r, double x) {
    const cplx exact = specfun::hyp2f1(0.25 + i * r, 0.75 + i * r, 1.0 + 2.0 * i * r, 4.0 / (x * x)).value;
    return std::abs(specfun::hyp2f1_asymptotic(r, x).value - exact);
  };
  double c = 0.0, worst_ratio = INFINITY;
  for (double r : {20.0, 50.0, 100.0})
    for (double x : {5.0, 10.0, 20.0}) c = std::max(c, err(r, x) * x * x * r * r);
  for (double r : {20.0, 50.0})
    for (double x : {5.0, 10.0, 20.0}) worst_ratio = std::min(worst_ratio, err(r, x) / err(2.0 * r, x));
  o.require(c <= kC, "C = " + sci(c));
  o.require(worst_ratio >= kDoubling, "doubling ratio " + sci(worst_ratio));
  o.record = {{"C", c}, {"doubling", worst_ratio}};
  if (o.pass) o.detail = "C = " + sci(c) + ", min doubling ratio " + sci(worst_ratio);
  return o;
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) ids.insert(std::stoi(item));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  int threads = 4;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--known-failures" && a + 1 < argc) known = parse_ids(argv[++a]);
    else if (arg == "--threads" && a + 1 < argc) threads = std::max(1, std::stoi(argv[++a]));
    else {
      std::fprintf(stderr, "usage: acceptance [--known-failures ids] [--threads N]\n");
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "exact-arithmetic identities", 60, exact_arithmetic},
      {2, "main-term identity", 60, main_term},
      {3, "generalized L-functions", 300, l_functions},
      {4, "transform cross-validation", 600, transforms_cross},
      {5, "convolution formula", 900, convolution},
      {6, "Lerch-moment identity", 300, lerch_moment},
      {7, "prime-geodesic identity", 600, census},
      {8, "moment trend", 1200, t13},
      {9, "smoothed moment bound", 600, t14},
      {10, "hypergeometric asymptotic", 60, hyper_asymptotic},
  };
  ExecContext wide;
  wide.threads = threads;
  ExecContext single;
  int unexpected = 0;
  auto emit = [&](int id, const std::string& title, bool pass, const std::string& detail) {
    const bool excused = !pass && known.count(id);
    if (!pass && !excused) ++unexpected;
    std::printf("[%s] criterion %2d %s: %s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(),
                excused ? " (known failure)" : "");
    std::fflush(stdout);
  };
  std::vector<std::string> first_bytes;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(wide);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.max_seconds, "runtime " + sci(secs) + " s over " + sci(c.max_seconds) + " s");
    first_bytes.push_back(report::dump(o.record));
    emit(c.id, c.title, o.pass, o.detail + " [" + sci(secs) + " s]");
  }
  // 11. rerun everything single-threaded and compare serialized reports
  const auto t0 = std::chrono::steady_clock::now();
  std::string differing;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::string bytes;
    try {
      bytes = report::dump(criteria[k].run(single).record);
    } catch (const std::exception& e) {
      bytes = e.what();
    }
    if (bytes != first_bytes[k]) differing += (differing.empty() ? "" : ",") + std::to_string(criteria[k].id);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(11, "determinism", differing.empty(),
       (differing.empty() ? "threads=" + std::to_string(threads) + " and threads=1 reports byte-identical"
                          : "reports differ for criteria " + differing) +
           " [" + sci(secs) + " s]");
  return unexpected == 0 ? 0 : 1;
}
