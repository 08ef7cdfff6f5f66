#pragma once

#include <utility>
#include <vector>

#include "gdl/arith.hpp"
#include "gdl/parallel.hpp"

namespace gdl::geodesics {

using arith::i64;

struct PellClassData {
  i64 delta = 0;
  i64 h = 0;
  i64 t0 = 0;
  i64 u0 = 0;
  double norm0 = 0.0;  // ((t0 + u0 sqrt(delta)) / 2)^2
};

struct CensusResult {
  double x = 0.0;
  double psi = 0.0;
  i64 class_count = 0;
  std::vector<PellClassData> per_delta;
};

/// Positive nonsquare delta = 0, 1 mod 4.
void check_discriminant(i64 delta);

/// Minimal positive (t, u) with t^2 - delta u^2 = 4, from the continued
/// fraction of (sqrt(delta) - delta mod 2) / 2. DomainError on overflow.
std::pair<i64, i64> pell_fundamental(i64 delta);

/// Number of SL2(Z) classes of primitive forms of discriminant delta (the
/// narrow class number), as the number of rho-cycles of reduced forms.
i64 form_class_number(i64 delta);

/// Sum over primitive hyperbolic classes: h(delta) log N0 per power N0^k <= x.
CensusResult psi_direct(double x, const ExecContext& ctx = {});

/// 2 sum_{3 <= n <= X} sqrt(n^2 - 4) L_{n^2-4}(1), X = x^{1/2} + x^{-1/2}.
double psi_via_l(double x, const ExecContext& ctx = {});

struct PgtRow {
  double x = 0.0;
  double psi = 0.0;
  double err = 0.0;             // psi - x
  double err_normalized = 0.0;  // (psi - x) / x^{2/3}
};

std::vector<PgtRow> pgt_error_table(const std::vector<double>& xs, const ExecContext& ctx = {});

}  // namespace gdl::geodesics
