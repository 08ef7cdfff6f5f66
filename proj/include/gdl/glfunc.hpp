#pragma once

#include <vector>

#include "gdl/arith.hpp"
#include "gdl/common.hpp"
#include "gdl/parallel.hpp"

namespace gdl::glfunc {

using arith::i64;

/// n = D f^2 with D fundamental; D = 1 for squares, D = 0 for n = 0.
struct DiscriminantDecomp {
  i64 n = 0;
  i64 D = 0;
  i64 f = 1;
};

/// Requires n = 0, 1 mod 4 and |n| <= 1e12.
DiscriminantDecomp decompose(i64 n);
bool is_fundamental(i64 D);

/// Kronecker symbol (D / m) for m >= 0.
int kronecker_chi(i64 D, i64 m);

enum class LRoute {
  automatic,
  hurwitz,     // |D|^{-s} sum_{a <= |D|} chi(a) zeta(s, a/|D|)
  smoothed,    // theta-function series with incomplete gamma weights
};

/// L(s, chi_D) for Re s > 0 (any s for the smoothed route), |D| <= 1e8
/// through the public routes. D = 1 is zeta(s).
EvalResult l_chi(cplx s, i64 D, LRoute route = LRoute::automatic);

/// (zeta(2s)/zeta(s)) sum_{q <= qmax} rho_q(n) q^{-s} for Re s > 1, summed as
/// one Dirichlet series with a mean-value tail correction.
EvalResult l_series_direct(i64 n, cplx s, i64 qmax);

struct LValue {
  i64 n = 0;
  cplx s;
  EvalResult result;
};

/// Analytic continuation: zeta(2s - 1) for n = 0, otherwise
/// L(s, chi_D) sum_{d | f} mu(d) chi_D(d) d^{-s} sigma_{1-2s}(f/d).
LValue l_value(i64 n, cplx s);
/// The finite factor above on its own.
cplx finite_factor(const DiscriminantDecomp& dec, cplx s);

/// (pi/|n|)^{-s/2} Gamma(s/2 + 1/4 - sgn(n)/4) L_n(s).
EvalResult l_completed(i64 n, cplx s);
double fe_residual(i64 n, cplx s);

/// L_n(s) for many n at one real s != 1; same values as l_value(n, s) through
/// the smoothed series with tabulated incomplete-gamma kernels.
std::vector<double> l_value_batch(const std::vector<i64>& ns, double s, const ExecContext& ctx);

}  // namespace gdl::glfunc
