#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/common.hpp"
#include "gdl/parallel.hpp"
#include "gdl/transforms.hpp"

namespace gdl::identities {

using arith::i64;

struct IdentityReport {
  std::string name;
  cplx lhs{};
  cplx rhs{};
  double residual = 0.0;
  double budget = 0.0;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, double>> metrics;
  std::string warning;
  bool passed = false;

  /// passed = residual <= max(budget, tolerance).
  void settle();
};

struct MomentConfig {
  double X = 1000.0;
  double T = 250.0;
  double theta = 1.0 / 6.0;

  void validate() const;
};

/// sum_q q^{-1-s} #{ab = l^2 (q)} against sigma_{-s}(l^2) zeta(s)/zeta(1+s).
IdentityReport main_term_identity(cplx s, i64 l, i64 qmax, double tolerance = 1e-5);

/// sum_n L_{n^2-4l^2}(s) n^{-alpha} against the Lerch-zeta expansion over
/// pairs ab = l^2 (q), q <= qmax.
IdentityReport lerch_moment_identity(cplx s, cplx alpha, i64 l, i64 qmax, double tolerance = 1e-4,
                                     const ExecContext& ctx = {});

/// sum_{n >= 1} omega(n) L_{n^2-4l^2}(s) over the integers in the support.
EvalResult convolution_lhs(const transforms::WindowSpec& w, cplx s, i64 l, i64 nmax, const ExecContext& ctx = {});

struct KloostermanOptions {
  bool main_term_only = false;  // drop the Kloosterman part (f = 0)
  double decay_tol = 1e-10;     // n range stops where |C| < decay_tol * int omega
  double max_terms = 2e9;       // cap on the number of (n, q) terms
};

/// Main term omega~(1) sigma_{-s}(l^2) zeta(2s)/zeta(1+s) plus the Kloosterman
/// double sum, q <= qmax. The n range follows the decay of f.
EvalResult kloosterman_rhs(const transforms::WindowSpec& w, cplx s, i64 l, i64 nmax, i64 qmax,
                           const KloostermanOptions& opt = {}, const ExecContext& ctx = {});

IdentityReport convolution_residual(const transforms::WindowSpec& w, cplx s, i64 l, i64 nmax, i64 qmax,
                                    double tolerance = 1e-3, const ExecContext& ctx = {});

/// sum 2 omega(n) L_{n^2-4}(1) against zeta(2) sum_q q^{-2} sum_l S(l^2,1;q) omega^(l/q).
/// Diagnostic: residuals at qmax/100, qmax/10, qmax go into metrics.
IdentityReport sy_diagnostic(const transforms::WindowSpec& w, i64 qmax, i64 lmax, const ExecContext& ctx = {});

/// sum_{2<n<X} L_{n^2-4}(1/2) against X log X/zeta(3/2) + lower-order main term.
IdentityReport t13_check(double X, const MomentConfig& cfg = {}, const ExecContext& ctx = {});
/// t13_check over xs: relative errors nonincreasing and the last <= max_rel.
IdentityReport t13_trend(const std::vector<double>& xs, const MomentConfig& cfg = {}, double max_rel = 0.05,
                         const ExecContext& ctx = {});

/// sum_{n>2} L_{n^2-4}(1/2) exp(-((n-X)/T)^2), reported as ratio sum/T.
IdentityReport smoothed_bound_t14(double X, double T, const ExecContext& ctx = {});

/// Main term of sum omega(n) L_{n^2-4l^2}(1/2); warns unless omega(2l) = 0.
EvalResult windowed_main_term(const transforms::WindowSpec& w, i64 l);

/// convolution_lhs at 1/2 minus windowed_main_term; for a transition window
/// with end X and fall T, metrics carry residual/(sqrt(X) (X/T)^{1/2}).
IdentityReport spectral_remainder(const transforms::WindowSpec& w, i64 l, const ExecContext& ctx = {});

}  // namespace gdl::identities
