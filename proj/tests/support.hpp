#pragma once

#include <initializer_list>
#include <utility>

#include "cantorlip/walsh.hpp"

namespace cantorlip::test {

inline SubsetMask mask_of(std::initializer_list<unsigned> indices) {
  SubsetMask m;
  for (unsigned j : indices) m = m ^ SubsetMask::single(j);
  return m;
}

inline WalshPolynomial u(std::initializer_list<unsigned> indices, unsigned level) {
  return WalshPolynomial::basis(mask_of(indices), level);
}

/// sum of c_i u_{F_i} at the given level.
inline WalshPolynomial poly(unsigned level, std::initializer_list<std::pair<Scalar, SubsetMask>> terms) {
  WalshPolynomial f(level);
  for (const auto& [c, m] : terms) f += WalshPolynomial::basis(m, level).scaled(c);
  return f;
}

/// 4 u0 + u1 + u0 u1, the standard separating element.
inline WalshPolynomial separating_element() {
  return poly(2, {{4, mask_of({0})}, {1, mask_of({1})}, {1, mask_of({0, 1})}});
}

inline SeminormValue value(const Rational& v) { return SeminormValue::from_rational(v); }

}  // namespace cantorlip::test
