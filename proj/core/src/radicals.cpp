#include "cantorlip/radicals.hpp"

#include "cantorlip/errors.hpp"

namespace cantorlip {

DyadicInterval sqrt_enclosure(const Rational& q, unsigned bits) {
  if (sgn(q) < 0) throw RangeError("square root of a negative rational");
  // r = floor(sqrt(q) * 2^bits) = floor(sqrt(floor(q * 4^bits))).
  Integer scaled = q.get_num() << (2 * bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  const Rational unit = pow2(-static_cast<int>(bits));
  return {Rational(r) * unit, Rational(r + 1) * unit};
}

namespace {

Ordering order_of(int c) { return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal); }

Ordering exact_order(const Rational& a, const RadicalSum& rhs) {
  const Rational c2 = rhs.coefficient * rhs.coefficient;
  switch (rhs.radicands.size()) {
    case 0:
      return order_of(sgn(a));
    case 1:
      return order_of(cmp(a, c2 * rhs.radicands[0]));
    case 2: {
      const Rational& p = rhs.radicands[0];
      const Rational& q = rhs.radicands[1];
      // a vs c2 (p + q) + 2 c2 sqrt(p q)
      const Rational rest = a - c2 * (p + q);
      if (sgn(rest) < 0) return Ordering::less;
      const Rational cross = 4 * c2 * c2 * p * q;
      return order_of(cmp(rest * rest, cross));
    }
    default:
      throw UnsupportedError("exact radical comparison supports at most two radicands");
  }
}

}  // namespace

RadicalComparison compare(const SeminormValue& lhs, const RadicalSum& rhs, unsigned max_bits) {
  if (sgn(rhs.coefficient) < 0) throw RangeError("radical sum coefficient must be non-negative");
  for (unsigned bits = 16; bits <= max_bits; bits *= 2) {
    const auto l = sqrt_enclosure(lhs.squared(), bits);
    Rational lo;
    Rational hi;
    for (const auto& r : rhs.radicands) {
      const auto e = sqrt_enclosure(r, bits);
      lo += e.lo;
      hi += e.hi;
    }
    lo *= rhs.coefficient;
    hi *= rhs.coefficient;
    if (l.hi < lo) return {Ordering::less, bits};
    if (l.lo > hi) return {Ordering::greater, bits};
  }
  return {exact_order(lhs.squared(), rhs), 0};
}

}  // namespace cantorlip
