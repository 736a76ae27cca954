#include "cantorlip/lipnorms.hpp"

#include <algorithm>
#include <initializer_list>

#include "cantorlip/errors.hpp"
#include "coefficient_frame.hpp"

namespace cantorlip {

namespace {

using detail::Frame;
using detail::Wide;

constexpr bool in_rho(SubsetMask a, unsigned k) { return !a.empty() && a.max_element() >= k; }

// Largest squared modulus seen for each k, in frame units.
template <class Int>
struct PerLevelMax {
  explicit PerLevelMax(unsigned n) : best(n, Wide<Int>(0)) {}
  void offer(unsigned k, const Wide<Int>& w) {
    if (w > best[k]) best[k] = w;
  }
  std::vector<Wide<Int>> best;
};

// max_k best[k] * 4^{k + shift} / D^2.
template <class Int>
SeminormValue combine(const PerLevelMax<Int>& m, int shift, const Integer& den) {
  Rational out;
  for (std::size_t k = 0; k < m.best.size(); ++k) {
    Rational v(detail::to_integer(m.best[k]));
    v *= pow2(2 * (static_cast<int>(k) + shift));
    if (v > out) out = std::move(v);
  }
  out /= Rational(den * den);
  return SeminormValue::from_squared(out);
}

template <class Int>
SeminormValue lip_d_formula_kernel(const Frame<Int>& fr, const Integer& den) {
  const std::uint32_t points = std::uint32_t{1} << fr.level;
  PerLevelMax<Int> m(fr.level);
  Int sr(0);
  Int si(0);
  for (std::uint32_t x = 0; x < points; ++x) {
    for (std::uint32_t y = x + 1; y < points; ++y) {
      const auto k = static_cast<unsigned>(std::countr_zero(x ^ y));
      sr = 0;
      si = 0;
      for (std::size_t t = 0; t < fr.masks.size(); ++t) {
        const int s = sigma_sign(fr.masks[t], x, y);
        if (s > 0) {
          sr += fr.re[t];
          if (!fr.real) si += fr.im[t];
        } else if (s < 0) {
          sr -= fr.re[t];
          if (!fr.real) si -= fr.im[t];
        }
      }
      m.offer(k, detail::square_sum(sr, si));
    }
  }
  // f(x) - f(y) = 2 * sum, quotient by 2^{-k}: 2^{k+1} |sum|.
  return combine(m, 1, den);
}

template <class Int>
void integer_butterfly(std::vector<Int>& t, unsigned level) {
  const std::size_t size = t.size();
  for (unsigned j = 0; j < level; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & bit) != 0) continue;
      Int lo = t[i];
      t[i] = lo - t[i | bit];
      t[i | bit] += lo;
    }
  }
}

template <class Int>
SeminormValue lip_d_fast_kernel(const Frame<Int>& fr, const Integer& den) {
  const unsigned n = fr.level;
  const std::size_t points = std::size_t{1} << n;
  std::vector<Int> re(points, Int(0));
  std::vector<Int> im;
  for (std::size_t t = 0; t < fr.masks.size(); ++t) re[fr.masks[t].bits] = fr.re[t];
  integer_butterfly(re, n);
  if (!fr.real) {
    im.assign(points, Int(0));
    for (std::size_t t = 0; t < fr.masks.size(); ++t) im[fr.masks[t].bits] = fr.im[t];
    integer_butterfly(im, n);
  }

  PerLevelMax<Int> m(n);
  for (unsigned k = 0; k < n; ++k) {
    const std::size_t prefixes = std::size_t{1} << k;
    const std::size_t tails = std::size_t{1} << (n - k - 1);
    const std::size_t bit = std::size_t{1} << k;
    auto index = [&](std::size_t prefix, std::size_t tail) { return prefix | (tail << (k + 1)); };
    for (std::size_t p = 0; p < prefixes; ++p) {
      if (fr.real) {
        Int max0 = re[index(p, 0)];
        Int min0 = max0;
        Int max1 = re[index(p, 0) | bit];
        Int min1 = max1;
        for (std::size_t h = 1; h < tails; ++h) {
          const Int& v0 = re[index(p, h)];
          const Int& v1 = re[index(p, h) | bit];
          if (v0 > max0) max0 = v0;
          if (v0 < min0) min0 = v0;
          if (v1 > max1) max1 = v1;
          if (v1 < min1) min1 = v1;
        }
        Int a = max0 - min1;
        Int b = max1 - min0;
        const Int& spread = a > b ? a : b;
        m.offer(k, detail::square_sum(spread, Int(0)));
      } else {
        for (std::size_t h0 = 0; h0 < tails; ++h0) {
          const std::size_t x = index(p, h0);
          for (std::size_t h1 = 0; h1 < tails; ++h1) {
            const std::size_t y = index(p, h1) | bit;
            Int dr = re[x] - re[y];
            Int di = im[x] - im[y];
            m.offer(k, detail::square_sum(dr, di));
          }
        }
      }
    }
  }
  // |f(x) - f(y)| / 2^{-k}.
  return combine(m, 0, den);
}

template <class Int>
SeminormValue lip_lambda_formula_kernel(const Frame<Int>& fr, const Integer& den) {
  const unsigned n = fr.level;
  const std::uint32_t points = std::uint32_t{1} << n;
  PerLevelMax<Int> m(n);
  Int sr(0);
  Int si(0);
  for (unsigned k = 0; k < n; ++k) {
    for (std::uint32_t x = 0; x < points; ++x) {
      sr = 0;
      si = 0;
      for (std::size_t t = 0; t < fr.masks.size(); ++t) {
        if (!in_rho(fr.masks[t], k)) continue;
        if (basis_sign(fr.masks[t], x) > 0) {
          sr += fr.re[t];
          if (!fr.real) si += fr.im[t];
        } else {
          sr -= fr.re[t];
          if (!fr.real) si -= fr.im[t];
        }
      }
      m.offer(k, detail::square_sum(sr, si));
    }
  }
  return combine(m, 1, den);
}

SeminormValue a1_value(const WalshPolynomial& f) {
  return closed_form_a1(f.coefficient(SubsetMask{}), f.coefficient(SubsetMask::single(0)));
}

}  // namespace

SigmaSet sigma_set(const CantorPoint& x, const CantorPoint& y) {
  const auto k = first_diff(x, y);
  if (!k) throw UndefinedPairError("sigma set needs two distinct points");
  SigmaSet out{x, y, *k, {}, {}};
  const std::uint32_t masks = std::uint32_t{1} << x.level();
  for (std::uint32_t a = 1; a < masks; ++a) {
    const int s = sigma_sign(SubsetMask(a), x.word(), y.word());
    if (s != 0) {
      out.members.emplace_back(a);
      out.signs.push_back(s);
    }
  }
  return out;
}

RhoSet rho_set(unsigned k, unsigned level) {
  if (level > kMaxLevel) throw LevelError("level exceeds the cap");
  if (k >= level) throw RangeError("rho set index k must be below the level");
  RhoSet out{k, level, {}};
  const std::uint32_t masks = std::uint32_t{1} << level;
  for (std::uint32_t a = 1; a < masks; ++a) {
    if (in_rho(SubsetMask(a), k)) out.members.emplace_back(a);
  }
  return out;
}

SeminormValue lip_d_formula(const WalshPolynomial& f) {
  if (f.level() <= 1) return a1_value(f);
  const auto framed = detail::make_frame(f, true);
  return std::visit([&](const auto& fr) { return lip_d_formula_kernel(fr, framed.denominator); }, framed.frame);
}

SeminormValue lip_d_fast(const WalshPolynomial& f) {
  if (f.level() == 0) return {};
  const auto framed = detail::make_frame(f, true);
  return std::visit([&](const auto& fr) { return lip_d_fast_kernel(fr, framed.denominator); }, framed.frame);
}

SeminormValue lip_lambda(const WalshPolynomial& f) {
  SeminormValue best;
  for (unsigned k = 0; k < f.level(); ++k) {
    const WalshPolynomial residual = f - conditional_expectation(f, k);
    best = std::max(best, sup_norm(residual).scaled_pow2(static_cast<int>(k) + 1));
  }
  return best;
}

SeminormValue lip_lambda_formula(const WalshPolynomial& f) {
  if (f.level() <= 1) return a1_value(f);
  const auto framed = detail::make_frame(f, true);
  return std::visit([&](const auto& fr) { return lip_lambda_formula_kernel(fr, framed.denominator); },
                    framed.frame);
}

SeminormValue closed_form_a1(const Scalar& /*alpha0*/, const Scalar& alpha1) {
  return SeminormValue::from_modulus(alpha1).scaled_pow2(1);
}

namespace {

SeminormValue max_of(std::initializer_list<SeminormValue> values) { return std::max(values); }

SeminormValue times(int factor_log2, const Scalar& z) {
  return SeminormValue::from_modulus(z).scaled_pow2(factor_log2);
}

}  // namespace

SeminormValue closed_form_a2_d(const Scalar& a0, const Scalar& a1, const Scalar& a2) {
  return max_of({times(1, a0 - a2), times(1, a0 - a1), times(1, a0 + a1), times(1, a0 + a2),
                 times(2, a1 - a2), times(2, a1 + a2)});
}

SeminormValue closed_form_a2_lambda(const Scalar& a0, const Scalar& a1, const Scalar& a2) {
  return max_of({times(1, a0 + a1 - a2), times(1, a0 - a1 + a2), times(1, a0 - a1 - a2),
                 times(1, a0 + a1 + a2), times(2, a1 - a2), times(2, a1 + a2)});
}

SeminormValue basis_norm(SubsetMask mask) {
  if (mask.empty()) return {};
  return SeminormValue::from_rational(pow2(static_cast<int>(mask.max_element()) + 1));
}

}  // namespace cantorlip
