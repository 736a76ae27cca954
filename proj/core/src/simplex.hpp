#pragma once

#include <vector>

#include "cantorlip/optimization.hpp"

namespace cantorlip::detail {

struct StandardFormResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> x;
  /// Basic column per remaining row; rows that turned out redundant are
  /// reported in `dropped_rows`.
  std::vector<std::size_t> basis;
  std::size_t dropped_rows = 0;
  std::size_t pivots = 0;
};

/// minimize c^T x subject to A x = b, x >= 0. Dense two-phase tableau
/// simplex over the rationals with Bland's rule.
StandardFormResult simplex_minimize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                    const std::vector<Rational>& c);

/// Solves the square system m x = rhs exactly. Throws DimensionError when m
/// is singular.
std::vector<Rational> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs);

}  // namespace cantorlip::detail
