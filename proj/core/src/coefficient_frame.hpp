#pragma once

// Common-denominator integer view of a Walsh polynomial used by the seminorm
// kernels. Every coefficient alpha_F becomes (re_F + i im_F) / D with integer
// numerators; kernels run on int64 when the worst-case sums provably fit and
// on mpz otherwise.

#include <cstdint>
#include <type_traits>
#include <variant>
#include <vector>

#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip::detail {

template <class Int>
struct WideOf {
  using type = Integer;
};
template <>
struct WideOf<std::int64_t> {
  using type = __int128;
};
template <class Int>
using Wide = typename WideOf<Int>::type;

inline Integer to_integer(const Integer& v) { return v; }
inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }
inline Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  Integer out = (hi << 64) + lo;
  return neg ? Integer(-out) : out;
}

template <class Int>
Wide<Int> square_sum(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    return static_cast<__int128>(a) * a + static_cast<__int128>(b) * b;
  } else {
    Integer s = a * a;
    s += b * b;
    return s;
  }
}

template <class Int>
struct Frame {
  unsigned level = 0;
  bool real = true;
  std::vector<SubsetMask> masks;
  std::vector<Int> re;
  std::vector<Int> im;
};

struct FramedPolynomial {
  Integer denominator = 1;
  std::variant<Frame<std::int64_t>, Frame<Integer>> frame;
};

/// Converts f, skipping the unit coefficient when `drop_constant` is set.
/// The int64 representation is chosen only if |numerator| * 2^(level + 2)
/// stays below 2^62, which bounds every signed sum the kernels form.
inline FramedPolynomial make_frame(const WalshPolynomial& f, bool drop_constant) {
  FramedPolynomial out;
  Integer den = 1;
  for (const auto& [mask, c] : f.coeffs()) {
    if (drop_constant && mask.empty()) continue;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im.get_den_mpz_t());
  }
  out.denominator = den;

  Frame<Integer> big;
  big.level = f.level();
  Integer bound = 0;
  for (const auto& [mask, c] : f.coeffs()) {
    if (drop_constant && mask.empty()) continue;
    Integer r = c.re.get_num() * (den / c.re.get_den());
    Integer i = c.im.get_num() * (den / c.im.get_den());
    if (i != 0) big.real = false;
    bound = std::max(bound, Integer(abs(r)));
    bound = std::max(bound, Integer(abs(i)));
    big.masks.push_back(mask);
    big.re.push_back(std::move(r));
    big.im.push_back(std::move(i));
  }

  const unsigned headroom = f.level() + 2;
  if (headroom < 62 && mpz_sizeinbase(bound.get_mpz_t(), 2) + headroom < 62) {
    Frame<std::int64_t> small;
    small.level = big.level;
    small.real = big.real;
    small.masks = big.masks;
    small.re.reserve(big.re.size());
    small.im.reserve(big.im.size());
    for (std::size_t t = 0; t < big.re.size(); ++t) {
      small.re.push_back(big.re[t].get_si());
      small.im.push_back(big.im[t].get_si());
    }
    out.frame = std::move(small);
  } else {
    out.frame = std::move(big);
  }
  return out;
}

}  // namespace cantorlip::detail
