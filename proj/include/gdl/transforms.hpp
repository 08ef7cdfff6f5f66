#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gdl/common.hpp"

namespace gdl::transforms {

enum class WindowKind { bump, transition, gaussian };

/// Smooth test function. bump: amplitude * exp(-shape / (1 - t^2)) with t the
/// affine image of [a1, a2] onto [-1, 1]. transition: smooth rise on
/// [a1, a1 + rise], plateau 1, smooth fall on [a2 - fall, a2]. gaussian:
/// amplitude * exp(-((x - X)/T)^2).
struct WindowSpec {
  WindowKind kind = WindowKind::bump;
  double a1 = 0.0;
  double a2 = 0.0;
  double X = 0.0;
  double T = 0.0;
  double shape = 1.0;
  double rise = 0.0;
  double fall = 0.0;
  double amplitude = 1.0;

  static WindowSpec bump(double a1, double a2, double shape = 1.0);
  static WindowSpec transition(double a1, double a2, double rise, double fall);
  /// omega = 1 on [T, X - T], 0 outside [T/2, X].
  static WindowSpec plateau(double X, double T);
  static WindowSpec gaussian(double X, double T);

  /// Grammar: kind:a1,a2[,shape] | transition:a1,a2[,rise[,fall]] |
  /// plateau:X,T | gaussian:X,T, optionally followed by *amplitude
  static WindowSpec parse(const std::string& text);
  std::string to_string() const;

  void validate() const;
  bool compact() const { return kind != WindowKind::gaussian; }
  /// Support (compact kinds) or the +-10 T truncation (gaussian).
  double lower() const;
  double upper() const;
  /// Interior points where the integrand changes character (ramp ends).
  std::vector<double> breakpoints() const;
  WindowSpec scaled(double c) const;
};

double window_eval(const WindowSpec& w, double x);
/// int_0^infty omega, error <= 1e-10.
EvalResult window_moment0(const WindowSpec& w);

/// C(t) = int_lo^hi v(y) cos(t y) dy by a fixed composite Gauss-Legendre
/// rule resolved up to frequency t_max.
class CosineTransform {
 public:
  CosineTransform(std::function<double(double)> v, std::vector<double> breaks, double t_max);
  static CosineTransform of_window(const WindowSpec& w, double t_max);

  double operator()(double t) const;
  /// dC/dt
  double deriv(double t) const;
  double t_max() const { return t_max_; }
  double l1_norm() const { return l1_; }
  /// Smallest t such that |C(u)| (1 + u)^power <= tol for all scanned u >= t.
  double decay_cutoff(double tol, double power) const;

 private:
  friend class CosineTable;
  std::vector<double> y_;
  std::vector<double> wv_;  // weight * v(y)
  double t_max_;
  double l1_;
};

/// Cubic Hermite table of a CosineTransform on [0, t_end].
class CosineTable {
 public:
  CosineTable() = default;
  CosineTable(const CosineTransform& c, double t_end, double step);
  /// From samples of C and C' at t = i * step.
  CosineTable(std::vector<double> values, std::vector<double> derivs, double step);
  double operator()(double t) const;
  double t_end() const { return t_end_; }
  double step() const { return step_; }
  const std::vector<double>& values() const { return v_; }

 private:
  double step_ = 1.0;
  double t_end_ = 0.0;
  std::vector<double> v_;
  std::vector<double> d_;
};

/// Cosine transform of a compact window from trapezoid samples (spectrally
/// accurate for smooth windows), tabulated up to where |C| <= 1e-14 l1.
struct SampledCosine {
  double t_cut = 0.0;
  double l1 = 0.0;
  double h = 0.0;
  std::vector<double> y;
  std::vector<double> wv;  // trapezoid weight * v(y)
  CosineTable table;

  double operator()(double t) const { return t > t_cut ? 0.0 : table(t); }
  /// Last tabulated t with |C(t)| > rel * l1.
  double cutoff(double rel) const;
};

/// Built once per window and cached.
std::shared_ptr<const SampledCosine> window_cosine(const WindowSpec& w);

/// f(omega; s; x) = (2/sqrt(pi)) (x/(4l))^s int omega(y) cos(x y/(2l)) dy.
cplx f_weight(const WindowSpec& w, cplx s, int l, double x);

enum class GMethod { integral, hypergeometric };
enum class HMethod { integral, hypergeometric, closed_s1 };

/// g(omega; s; k): Bessel integral, or the split g1 + g2 through 2F1.
EvalResult g_weight(const WindowSpec& w, cplx s, int l, int k, GMethod method);
/// h(omega; s; r): Bessel-kernel integral (real r), the split
/// h1(r) + h1(-r) + h2 through 2F1 (complex r allowed), or the s = 1, l = 1
/// cosine form.
EvalResult h_weight(const WindowSpec& w, cplx s, int l, cplx r, HMethod method);
/// Elementary closed form of h at r = (s - 1)/(2i).
EvalResult h_special_point(const WindowSpec& w, cplx s, int l);
/// int_{-R}^{R} h(omega; 1; r) dr with l = 1 through the cosine form.
EvalResult h_integral_zero(const WindowSpec& w);

}  // namespace gdl::transforms
