#pragma once

#include <vector>

#include "cantorlip/rational.hpp"

namespace cantorlip {

/// coefficient * (sqrt(r_0) + sqrt(r_1) + ...), every r_i >= 0 and
/// coefficient >= 0.
struct RadicalSum {
  Rational coefficient = 1;
  std::vector<Rational> radicands;
};

/// Dyadic enclosure [lo, hi] of sqrt(q) with hi - lo <= 2^-bits.
struct DyadicInterval {
  Rational lo;
  Rational hi;
};

DyadicInterval sqrt_enclosure(const Rational& q, unsigned bits);

enum class Ordering { less, equal, greater };

struct RadicalComparison {
  Ordering order = Ordering::equal;
  /// Precision at which the enclosures separated; 0 when the decision came
  /// from the exact squaring certificate.
  unsigned bits = 0;
};

/// Orders sqrt(lhs.squared()) against rhs. Enclosures are refined (16, 32,
/// ... up to max_bits) until they separate; ties and near-ties are settled
/// by exact squaring, which supports up to two radicands.
RadicalComparison compare(const SeminormValue& lhs, const RadicalSum& rhs, unsigned max_bits = 512);

inline bool less_or_equal(const SeminormValue& lhs, const RadicalSum& rhs) {
  return compare(lhs, rhs).order != Ordering::greater;
}

}  // namespace cantorlip
