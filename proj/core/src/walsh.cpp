#include "cantorlip/walsh.hpp"

#include <algorithm>
#include <string>

#include "cantorlip/errors.hpp"

namespace cantorlip {

namespace {

void check_level(unsigned level) {
  if (level > kMaxLevel) {
    throw LevelError("level " + std::to_string(level) + " exceeds the cap " + std::to_string(kMaxLevel));
  }
}

void check_mask(SubsetMask mask, unsigned level) {
  if (mask.required_level() > level) {
    throw LevelError("basis index " + std::to_string(mask.max_element()) + " outside level " +
                     std::to_string(level));
  }
}

}  // namespace

CantorPoint::CantorPoint(unsigned level, std::uint32_t word) : level_(level), word_(word) {
  check_level(level);
  if (level < 32 && (word >> level) != 0) {
    throw LevelError("point has nonzero coordinates at or beyond level " + std::to_string(level));
  }
}

CantorPoint CantorPoint::from_bits(std::string_view text) {
  if (text.size() > kMaxLevel) throw LevelError("point literal longer than the level cap");
  std::uint32_t word = 0;
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1') {
      word |= std::uint32_t{1} << j;
    } else if (text[j] != '0') {
      throw RangeError("point literal must contain only 0 and 1");
    }
  }
  return {static_cast<unsigned>(text.size()), word};
}

CantorPoint CantorPoint::lifted(unsigned m) const {
  if (m < level_) throw LevelError("cannot lift a point to a lower level");
  return {m, word_};
}

std::string CantorPoint::to_bits() const {
  std::string s(level_, '0');
  for (unsigned j = 0; j < level_; ++j) {
    if (coordinate(j) != 0) s[j] = '1';
  }
  return s;
}

WalshPolynomial::WalshPolynomial(unsigned level) : level_(level) { check_level(level); }

WalshPolynomial::WalshPolynomial(unsigned level, CoeffMap coeffs) : level_(level) {
  check_level(level);
  for (auto& [mask, c] : coeffs) {
    check_mask(mask, level);
    if (!c.is_zero()) coeffs_.emplace(mask, std::move(c));
  }
}

WalshPolynomial WalshPolynomial::constant(const Scalar& c, unsigned level) {
  return WalshPolynomial(level, {{SubsetMask{}, c}});
}

WalshPolynomial WalshPolynomial::basis(SubsetMask mask, unsigned level) {
  check_level(level);
  check_mask(mask, level);
  return WalshPolynomial(level, {{mask, Scalar(1)}});
}

WalshPolynomial WalshPolynomial::eta(unsigned j, unsigned level) {
  if (j >= level) throw LevelError("eta index " + std::to_string(j) + " outside level " + std::to_string(level));
  const Rational half(1, 2);
  return WalshPolynomial(level, {{SubsetMask{}, Scalar(half)}, {SubsetMask::single(j), Scalar(half)}});
}

bool WalshPolynomial::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first.empty());
}

bool WalshPolynomial::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

Scalar WalshPolynomial::coefficient(SubsetMask mask) const {
  const auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? Scalar() : it->second;
}

unsigned WalshPolynomial::minimal_level() const {
  unsigned m = 0;
  for (const auto& kv : coeffs_) m = std::max(m, kv.first.required_level());
  return m;
}

WalshPolynomial WalshPolynomial::lifted(unsigned m) const {
  if (m < level_) throw LevelError("cannot lift from level " + std::to_string(level_) + " to " + std::to_string(m));
  check_level(m);
  WalshPolynomial out = *this;
  out.level_ = m;
  return out;
}

WalshPolynomial lift_level(const WalshPolynomial& f, unsigned m) { return f.lifted(m); }

WalshPolynomial WalshPolynomial::conjugate() const {
  WalshPolynomial out(level_);
  for (const auto& [mask, c] : coeffs_) out.coeffs_.emplace(mask, c.conj());
  return out;
}

WalshPolynomial WalshPolynomial::scaled(const Scalar& c) const {
  WalshPolynomial out(level_);
  if (c.is_zero()) return out;
  for (const auto& [mask, a] : coeffs_) out.coeffs_.emplace(mask, a * c);
  return out;
}

void WalshPolynomial::accumulate(SubsetMask mask, const Scalar& c) {
  auto [it, inserted] = coeffs_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  } else if (c.is_zero()) {
    coeffs_.erase(it);
  }
}

WalshPolynomial& WalshPolynomial::operator+=(const WalshPolynomial& o) {
  level_ = std::max(level_, o.level_);
  for (const auto& [mask, c] : o.coeffs_) accumulate(mask, c);
  return *this;
}

WalshPolynomial& WalshPolynomial::operator-=(const WalshPolynomial& o) {
  level_ = std::max(level_, o.level_);
  for (const auto& [mask, c] : o.coeffs_) accumulate(mask, -c);
  return *this;
}

WalshPolynomial operator*(const WalshPolynomial& a, const WalshPolynomial& b) {
  // u_F u_G = u_{F xor G} because u_j^2 = 1.
  WalshPolynomial out(std::max(a.level_, b.level_));
  for (const auto& [fm, fc] : a.coeffs_) {
    for (const auto& [gm, gc] : b.coeffs_) out.accumulate(fm ^ gm, fc * gc);
  }
  return out;
}

Scalar evaluate(const WalshPolynomial& f, const CantorPoint& x) {
  if (x.level() != f.level()) {
    throw LevelError("point level " + std::to_string(x.level()) + " differs from polynomial level " +
                     std::to_string(f.level()));
  }
  Scalar sum;
  for (const auto& [mask, c] : f.coeffs()) {
    if (basis_sign(mask, x.word()) > 0) {
      sum += c;
    } else {
      sum -= c;
    }
  }
  return sum;
}

namespace {

// In place: t[x] <- sum_F t[F] u_F(x). Coordinate j flips between
// u_j = -1 (x_j = 0) and u_j = +1 (x_j = 1).
void signed_butterfly(std::vector<Rational>& t, unsigned level) {
  const std::size_t size = t.size();
  for (unsigned j = 0; j < level; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & bit) != 0) continue;
      Rational& lo = t[i];
      Rational& hi = t[i | bit];
      Rational diff = lo - hi;
      hi += lo;
      lo = std::move(diff);
    }
  }
}

}  // namespace

std::vector<Scalar> evaluate_all(const WalshPolynomial& f) {
  const std::size_t size = std::size_t{1} << f.level();
  std::vector<Rational> re(size);
  std::vector<Rational> im;
  const bool real = f.is_real();
  if (!real) im.assign(size, Rational());
  for (const auto& [mask, c] : f.coeffs()) {
    re[mask.bits] = c.re;
    if (!real) im[mask.bits] = c.im;
  }
  signed_butterfly(re, f.level());
  if (!real) signed_butterfly(im, f.level());
  std::vector<Scalar> out(size);
  for (std::size_t i = 0; i < size; ++i) {
    out[i].re = std::move(re[i]);
    if (!real) out[i].im = std::move(im[i]);
  }
  return out;
}

namespace {

// Renumbers the coordinates used by f to 0..m-1; f's range is unchanged.
WalshPolynomial compress_support(const WalshPolynomial& f) {
  std::uint32_t used = 0;
  for (const auto& entry : f.coeffs()) used |= entry.first.bits;
  const auto m = static_cast<unsigned>(std::popcount(used));
  if (m == f.level()) return f;
  WalshPolynomial::CoeffMap packed;
  for (const auto& [mask, c] : f.coeffs()) {
    std::uint32_t bits = 0;
    unsigned out = 0;
    for (unsigned j = 0; j < f.level(); ++j) {
      if (((used >> j) & 1U) == 0) continue;
      if (mask.contains(j)) bits |= std::uint32_t{1} << out;
      ++out;
    }
    packed.emplace(SubsetMask(bits), c);
  }
  return {m, std::move(packed)};
}

}  // namespace

SeminormValue sup_norm(const WalshPolynomial& f) {
  if (f.is_zero()) return {};
  Rational best;
  for (const Scalar& v : evaluate_all(compress_support(f))) {
    Rational a = v.abs_squared();
    if (a > best) best = std::move(a);
  }
  return SeminormValue::from_squared(best);
}

Scalar lambda_state(const WalshPolynomial& f) { return f.coefficient(SubsetMask{}); }

WalshPolynomial conditional_expectation(const WalshPolynomial& f, unsigned k) {
  WalshPolynomial::CoeffMap kept;
  for (const auto& [mask, c] : f.coeffs()) {
    if (mask.required_level() <= k) kept.emplace(mask, c);
  }
  return {f.level(), std::move(kept)};
}

std::optional<unsigned> first_diff(const CantorPoint& x, const CantorPoint& y) {
  if (x.level() != y.level()) throw LevelError("points live at different levels");
  const std::uint32_t d = x.word() ^ y.word();
  if (d == 0) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(d));
}

SeminormValue cantor_distance(const CantorPoint& x, const CantorPoint& y) {
  const auto k = first_diff(x, y);
  if (!k) return {};
  return SeminormValue::from_rational(pow2(-static_cast<int>(*k)));
}

}  // namespace cantorlip
