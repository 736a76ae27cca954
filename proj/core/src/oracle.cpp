#include "cantorlip/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <type_traits>

#include "cantorlip/errors.hpp"

namespace cantorlip {

namespace {

void check_level(unsigned n) {
  if (n > kOracleMaxLevel) {
    throw LevelError("oracle supports levels up to " + std::to_string(kOracleMaxLevel) + ", got " +
                     std::to_string(n));
  }
}

// f(x) = sum_F alpha_F prod_{j in F} (x_j ? 1 : -1), one factor at a time.
int sign_product(std::uint32_t mask, std::uint32_t x) {
  int s = 1;
  for (unsigned j = 0; mask != 0; ++j, mask >>= 1) {
    if ((mask & 1U) != 0 && ((x >> j) & 1U) == 0) s = -s;
  }
  return s;
}

int parity_sign(std::uint32_t mask, std::uint32_t x) { return (std::popcount(mask & ~x) & 1) != 0 ? -1 : 1; }

// Table of f scaled by the lcm of every coefficient denominator.
struct ScaledTable {
  unsigned level = 0;
  Integer den = 1;
  std::vector<Integer> re;
  std::vector<Integer> im;
  Integer magnitude;  // max |entry|
};

ScaledTable scaled_table(const WalshPolynomial& f) {
  check_level(f.level());
  ScaledTable t;
  t.level = f.level();
  for (const auto& [mask, c] : f.coeffs()) {
    mpz_lcm(t.den.get_mpz_t(), t.den.get_mpz_t(), c.re.get_den_mpz_t());
    mpz_lcm(t.den.get_mpz_t(), t.den.get_mpz_t(), c.im.get_den_mpz_t());
  }
  const std::size_t size = std::size_t{1} << t.level;
  t.re.assign(size, Integer(0));
  t.im.assign(size, Integer(0));
  for (const auto& [mask, c] : f.coeffs()) {
    const Integer nr = c.re.get_num() * (t.den / c.re.get_den());
    const Integer ni = c.im.get_num() * (t.den / c.im.get_den());
    for (std::uint32_t x = 0; x < size; ++x) {
      if (sign_product(mask.bits, x) > 0) {
        t.re[x] += nr;
        t.im[x] += ni;
      } else {
        t.re[x] -= nr;
        t.im[x] -= ni;
      }
    }
  }
  for (std::size_t x = 0; x < size; ++x) {
    t.magnitude = std::max(t.magnitude, Integer(abs(t.re[x])));
    t.magnitude = std::max(t.magnitude, Integer(abs(t.im[x])));
  }
  return t;
}

// Every intermediate of the scans below stays under 2^(bits(M) + 2n + 2).
bool fits_machine_words(const ScaledTable& t) {
  return mpz_sizeinbase(t.magnitude.get_mpz_t(), 2) + 2 * t.level + 3 < 62;
}

Integer to_big(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer out = (hi << 64) + lo;
  return negative ? Integer(-out) : out;
}
Integer to_big(const Integer& v) { return v; }

template <class Int>
struct WideOf {
  using type = Integer;
};
template <>
struct WideOf<std::int64_t> {
  using type = __int128;
};

template <class Int>
struct Columns {
  std::vector<Int> re;
  std::vector<Int> im;
};

template <class Int>
Columns<Int> columns(const ScaledTable& t) {
  Columns<Int> c;
  if constexpr (std::is_same_v<Int, Integer>) {
    c.re = t.re;
    c.im = t.im;
  } else {
    c.re.reserve(t.re.size());
    c.im.reserve(t.im.size());
    for (const auto& v : t.re) c.re.push_back(v.get_si());
    for (const auto& v : t.im) c.im.push_back(v.get_si());
  }
  return c;
}

template <class Int>
Integer max_pair_numerator(const Columns<Int>& c, unsigned n) {
  using Wide = typename WideOf<Int>::type;
  const std::uint32_t size = std::uint32_t{1} << n;
  Wide best = 0;
  for (std::uint32_t x = 0; x < size; ++x) {
    for (std::uint32_t y = 0; y < size; ++y) {
      if (x == y) continue;
      unsigned k = 0;
      while (((x >> k) & 1U) == ((y >> k) & 1U)) ++k;
      const Wide dr = Wide(c.re[x]) - Wide(c.re[y]);
      const Wide di = Wide(c.im[x]) - Wide(c.im[y]);
      Wide v = dr * dr + di * di;
      v <<= 2 * k;
      if (v > best) best = v;
    }
  }
  return to_big(best);
}

// Per-k sup over x of |2^n T(x) - sum_{a < 2^k} S_a a(x)|^2 where
// S_a = sum_x a(x) T(x).
template <class Int>
std::vector<Integer> residual_sups(const Columns<Int>& c, unsigned n) {
  using Wide = typename WideOf<Int>::type;
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<Integer> out;
  for (unsigned k = 0; k < n; ++k) {
    const std::uint32_t count = std::uint32_t{1} << k;
    std::vector<Int> sr(count, Int(0));
    std::vector<Int> si(count, Int(0));
    for (std::uint32_t a = 0; a < count; ++a) {
      for (std::uint32_t x = 0; x < size; ++x) {
        if (parity_sign(a, x) > 0) {
          sr[a] += c.re[x];
          si[a] += c.im[x];
        } else {
          sr[a] -= c.re[x];
          si[a] -= c.im[x];
        }
      }
    }
    Wide best = 0;
    for (std::uint32_t x = 0; x < size; ++x) {
      Int rr = c.re[x] * Int(size);
      Int ri = c.im[x] * Int(size);
      for (std::uint32_t a = 0; a < count; ++a) {
        if (parity_sign(a, x) > 0) {
          rr -= sr[a];
          ri -= si[a];
        } else {
          rr += sr[a];
          ri += si[a];
        }
      }
      const Wide v = Wide(rr) * Wide(rr) + Wide(ri) * Wide(ri);
      if (v > best) best = v;
    }
    out.push_back(to_big(best));
  }
  return out;
}

}  // namespace

PointTable point_table(const WalshPolynomial& f) {
  check_level(f.level());
  PointTable t{f.level(), std::vector<Scalar>(std::size_t{1} << f.level())};
  for (std::uint32_t x = 0; x < t.values.size(); ++x) {
    for (const auto& [mask, c] : f.coeffs()) {
      if (sign_product(mask.bits, x) > 0) {
        t.values[x] += c;
      } else {
        t.values[x] -= c;
      }
    }
  }
  return t;
}

SeminormValue oracle_lip_d(const WalshPolynomial& f) {
  const auto t = scaled_table(f);
  const Integer best = fits_machine_words(t) ? max_pair_numerator(columns<std::int64_t>(t), t.level)
                                             : max_pair_numerator(columns<Integer>(t), t.level);
  return SeminormValue::from_squared(make_rational(best, t.den * t.den));
}

Scalar oracle_lambda(const WalshPolynomial& f) {
  const auto t = point_table(f);
  Scalar sum;
  for (const auto& v : t.values) sum += v;
  const Rational inv = pow2(-static_cast<int>(t.level));
  return {sum.re * inv, sum.im * inv};
}

WalshPolynomial oracle_conditional_expectation(const WalshPolynomial& f, unsigned k) {
  const auto t = point_table(f);
  // Masks touching coordinates >= n average to zero against f.
  const unsigned top = std::min(k, t.level);
  const Rational inv = pow2(-static_cast<int>(t.level));
  WalshPolynomial::CoeffMap coeffs;
  for (std::uint32_t a = 0; a < (std::uint32_t{1} << top); ++a) {
    Scalar s;
    for (std::uint32_t x = 0; x < t.values.size(); ++x) {
      if (sign_product(a, x) > 0) {
        s += t.values[x];
      } else {
        s -= t.values[x];
      }
    }
    Scalar avg{s.re * inv, s.im * inv};
    if (!avg.is_zero()) coeffs.emplace(SubsetMask(a), std::move(avg));
  }
  return WalshPolynomial(t.level, std::move(coeffs));
}

SeminormValue oracle_lip_lambda(const WalshPolynomial& f) {
  const auto t = scaled_table(f);
  const auto sups = fits_machine_words(t) ? residual_sups(columns<std::int64_t>(t), t.level)
                                          : residual_sups(columns<Integer>(t), t.level);
  // Residuals carry the factor D 2^n.
  const Rational scale = make_rational(1, t.den * t.den) * pow2(-2 * static_cast<int>(t.level));
  Rational best;
  for (unsigned k = 0; k < sups.size(); ++k) {
    Rational v = Rational(sups[k]) * scale * pow2(2 * static_cast<int>(k + 1));
    if (v > best) best = std::move(v);
  }
  return SeminormValue::from_squared(best);
}

SeminormValue oracle_sup_norm(const WalshPolynomial& f) {
  const auto t = point_table(f);
  Rational best;
  for (const auto& v : t.values) {
    Rational m = v.abs_squared();
    if (m > best) best = std::move(m);
  }
  return SeminormValue::from_squared(best);
}

LeibnizReport leibniz_report(const WalshPolynomial& f, const WalshPolynomial& g) {
  if (f.level() != g.level()) throw LevelError("leibniz_report needs operands of equal level");
  const auto fg = f * g;
  const auto nf = oracle_sup_norm(f).squared();
  const auto ng = oracle_sup_norm(g).squared();

  LeibnizReport r;
  r.lhs_d = oracle_lip_d(fg);
  r.rhs_d.radicands = {oracle_lip_d(f).squared() * ng, nf * oracle_lip_d(g).squared()};
  r.lhs_lambda = oracle_lip_lambda(fg);
  r.rhs_lambda.radicands = {oracle_lip_lambda(f).squared() * ng, nf * oracle_lip_lambda(g).squared()};

  r.d_holds = less_or_equal(r.lhs_d, r.rhs_d);
  RadicalSum doubled = r.rhs_lambda;
  doubled.coefficient = 2;
  r.lambda_holds = less_or_equal(r.lhs_lambda, doubled);
  return r;
}

}  // namespace cantorlip
