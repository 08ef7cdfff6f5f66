#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <type_traits>

namespace gdl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Error taxonomy. Every failure the library reports derives from Error so a
// caller can wrap it with context without losing the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical value together with a heuristic absolute error estimate, the
/// number of terms (or nodes) that produced it and a short method tag.
struct EvalResult {
  EvalResult() = default;
  EvalResult(cplx v, double e, long t, std::string m, std::string w = {})
      : value(v), err(e), terms(t), method(std::move(m)), warning(std::move(w)) {}

  cplx value{};
  double err = 0.0;
  long terms = 1;
  std::string method;
  std::string warning;

  double real() const { return value.real(); }
};

/// e(x) = exp(2 pi i x).
inline cplx e_phase(double x) {
  const double a = 2.0 * kPi * x;
  return {std::cos(a), std::sin(a)};
}

/// Kahan–Babuska compensated accumulator; used wherever a long reduction must
/// be reproducible and accurate.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, cplx>) {
      comp_ += cplx(neumaier(sum_.real(), x.real(), t.real()),
                    neumaier(sum_.imag(), x.imag(), t.imag()));
    } else {
      comp_ += neumaier(sum_, x, t);
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double neumaier(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

}  // namespace gdl
