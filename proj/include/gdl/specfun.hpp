#pragma once

#include <span>
#include <vector>

#include "gdl/common.hpp"

namespace gdl::specfun {

struct Constants {
  double euler_gamma;
  double pi;
  double zeta_3_2;
  double zeta_prime_3_2;
};

/// Computed once from the series implementations below and checked against
/// reference digits; throws ConvergenceError if the check fails.
const Constants& constants();

// --- zeta family -----------------------------------------------------------

/// Riemann zeta on Re s > -2, |Im s| <= 100 (Euler-Maclaurin).
EvalResult zeta(cplx s);
/// zeta'(s) for real s > 1.
EvalResult zeta_deriv(double s);
/// Hurwitz zeta sum_{n>=0} (n+a)^{-s}, a > 0, analytically continued in s.
EvalResult hurwitz_zeta(cplx s, double a);

/// Lerch zeta sum_{n+alpha>0} e(n beta) (n+alpha)^{-s}.
/// beta integral: Hurwitz continuation (any s != 1). Otherwise Re s > 0.
EvalResult lerch_zeta(double alpha, double beta, cplx s);
/// |zeta(beta,0;s) - (2pi)^{s-1} Gamma(1-s) [-i e(s/4) zeta(0,beta;1-s)
///   + i e(-s/4) zeta(0,-beta;1-s)]| for 0 < beta < 1, Re s < 1.
double lerch_fe_residual(double beta, cplx s);

// --- gamma family ----------------------------------------------------------

/// log Gamma(s); the imaginary part is continuous along the positive real
/// axis and otherwise determined modulo 2 pi.
EvalResult log_gamma(cplx s);
cplx gamma(cplx s);
/// 1/Gamma(s), zero at the poles.
cplx rgamma(cplx s);
cplx digamma(cplx s);
/// Real digamma for x > 0.
double digamma(double x);
/// Upper incomplete gamma Gamma(a, x), x > 0.
EvalResult upper_gamma(cplx a, double x);

// --- Bessel ----------------------------------------------------------------

/// J_nu(x) for x in (0, 1e4], |nu| <= 100.
EvalResult bessel_j(cplx nu, double x);
/// J_nu at ascending abscissae; one ODE sweep shared across the points.
std::vector<cplx> bessel_j_sweep(cplx nu, std::span<const double> xs);

/// k0(x, ir) = (J_{2ir}(x) - J_{-2ir}(x)) / (2 cos(pi (1/2 + ir))) for real r.
EvalResult bessel_kernel_k0(double x, double r);
std::vector<double> bessel_kernel_k0_sweep(double r, std::span<const double> xs);

// --- hypergeometric --------------------------------------------------------

/// Gauss 2F1(a, b; c; x) for real x in [0, 1).
EvalResult hyp2f1(cplx a, cplx b, cplx c, double x);
/// Same, with 1 - x supplied exactly by the caller.
EvalResult hyp2f1(cplx a, cplx b, cplx c, double x, double one_minus_x);

enum class AsymptoticCoefficient {
  corrected,   // 1 - x / sqrt(x^2 - 4)
  as_printed,  // 1 - (x^2 - 2) / (x sqrt(x^2 - 4))
};

/// Two-term uniform approximation of F(1/4+ir, 3/4+ir; 1+2ir; 4/x^2);
/// err is the nominal 1/(x^2 r^2) budget.
EvalResult hyp2f1_asymptotic(double r, double x,
                             AsymptoticCoefficient coef = AsymptoticCoefficient::corrected);

}  // namespace gdl::specfun
