#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantorlip/rational.hpp"

namespace cantorlip {

/// Largest supported ambient level n. Tables hold 2^n entries and the
/// brute-force pair scans are O(4^n).
inline constexpr unsigned kMaxLevel = 24;

/// Finite subset F of the natural numbers, bit j set iff j is in F.
/// The empty mask stands for the unit function.
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

  static constexpr SubsetMask single(unsigned j) { return SubsetMask(std::uint32_t{1} << j); }

  constexpr bool empty() const { return bits == 0; }
  constexpr bool contains(unsigned j) const { return ((bits >> j) & 1U) != 0; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }

  /// Largest element; the mask must be nonempty.
  constexpr unsigned max_element() const { return 31U - static_cast<unsigned>(std::countl_zero(bits)); }

  /// Smallest level n with F contained in {0, ..., n-1}.
  constexpr unsigned required_level() const { return empty() ? 0 : max_element() + 1; }

  /// Symmetric difference, the index of u_F * u_G.
  friend constexpr SubsetMask operator^(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits ^ b.bits); }
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// Point of C_n: coordinates x_0 .. x_{n-1} stored in bits 0 .. n-1, every
/// later coordinate is zero.
class CantorPoint {
 public:
  CantorPoint() = default;
  CantorPoint(unsigned level, std::uint32_t word);

  /// Bit-string literal, leftmost character is x_0 ("10" means x_0 = 1, x_1 = 0).
  static CantorPoint from_bits(std::string_view text);

  unsigned level() const { return level_; }
  std::uint32_t word() const { return word_; }
  unsigned coordinate(unsigned j) const { return (word_ >> j) & 1U; }

  /// Same coordinates viewed in C_m, m >= level.
  CantorPoint lifted(unsigned m) const;

  std::string to_bits() const;

  friend bool operator==(const CantorPoint&, const CantorPoint&) = default;

 private:
  unsigned level_ = 0;
  std::uint32_t word_ = 0;
};

/// Element of A_n written in the Walsh basis: f = sum_F alpha_F u_F with
/// u_F = prod_{j in F} u_j and u_j = 2 eta_j - 1. Coefficients are kept in
/// canonical form (no stored zeros), so equality is structural.
class WalshPolynomial {
 public:
  using CoeffMap = std::map<SubsetMask, Scalar>;

  WalshPolynomial() = default;
  explicit WalshPolynomial(unsigned level);
  WalshPolynomial(unsigned level, CoeffMap coeffs);

  static WalshPolynomial zero(unsigned level) { return WalshPolynomial(level); }
  static WalshPolynomial constant(const Scalar& c, unsigned level);
  static WalshPolynomial basis(SubsetMask mask, unsigned level);
  /// eta_j = (u_j + 1) / 2.
  static WalshPolynomial eta(unsigned j, unsigned level);

  unsigned level() const { return level_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_real() const;

  /// Coefficient of u_F (zero when absent).
  Scalar coefficient(SubsetMask mask) const;

  /// Smallest level that holds every stored mask.
  unsigned minimal_level() const;

  WalshPolynomial lifted(unsigned m) const;
  WalshPolynomial conjugate() const;
  WalshPolynomial scaled(const Scalar& c) const;

  WalshPolynomial& operator+=(const WalshPolynomial& o);
  WalshPolynomial& operator-=(const WalshPolynomial& o);

  /// Operands at different levels are lifted to the larger one.
  friend WalshPolynomial operator+(WalshPolynomial a, const WalshPolynomial& b) { return a += b; }
  friend WalshPolynomial operator-(WalshPolynomial a, const WalshPolynomial& b) { return a -= b; }
  friend WalshPolynomial operator*(const WalshPolynomial& a, const WalshPolynomial& b);
  friend WalshPolynomial operator*(const Scalar& c, const WalshPolynomial& f) { return f.scaled(c); }

  friend bool operator==(const WalshPolynomial&, const WalshPolynomial&) = default;

 private:
  void accumulate(SubsetMask mask, const Scalar& c);

  unsigned level_ = 0;
  CoeffMap coeffs_;
};

inline WalshPolynomial add(const WalshPolynomial& f, const WalshPolynomial& g) { return f + g; }
inline WalshPolynomial multiply(const WalshPolynomial& f, const WalshPolynomial& g) { return f * g; }
inline WalshPolynomial scale(const Scalar& c, const WalshPolynomial& f) { return f.scaled(c); }
inline WalshPolynomial conjugate(const WalshPolynomial& f) { return f.conjugate(); }
WalshPolynomial lift_level(const WalshPolynomial& f, unsigned m);

/// u_F(x) = prod_{j in F} (2 x_j - 1) in {-1, +1}.
constexpr int basis_sign(SubsetMask mask, std::uint32_t word) {
  return (std::popcount(mask.bits & ~word) & 1) != 0 ? -1 : 1;
}

/// f(x); requires x.level() == f.level().
Scalar evaluate(const WalshPolynomial& f, const CantorPoint& x);

/// Values of f on every point of C_n, index = point word. Signed
/// Walsh-Hadamard butterfly, O(n 2^n) additions.
std::vector<Scalar> evaluate_all(const WalshPolynomial& f);

/// max_x |f(x)| over C_n, which is the sup norm on the Cantor space since f
/// only depends on the first n coordinates.
SeminormValue sup_norm(const WalshPolynomial& f);

/// The Haar state: lambda(1) = 1 and lambda(u_F) = 0 for F nonempty, so on
/// A_n it reads off the unit coefficient.
Scalar lambda_state(const WalshPolynomial& f);

/// E_k keeps u_F when max F < k (and the unit), drops it otherwise. Any k is
/// accepted; E_k(f) = f once k >= f.level().
WalshPolynomial conditional_expectation(const WalshPolynomial& f, unsigned k);

/// d(x, y) = 2^{-k}, k the first coordinate where x and y differ; 0 if x == y.
SeminormValue cantor_distance(const CantorPoint& x, const CantorPoint& y);
std::optional<unsigned> first_diff(const CantorPoint& x, const CantorPoint& y);

}  // namespace cantorlip
