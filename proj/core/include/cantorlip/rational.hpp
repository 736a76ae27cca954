#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cantorlip {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws RangeError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// 2^e for any integer exponent.
Rational pow2(int e);

/// "p" or "p/q", lowest terms, sign on the numerator.
std::string to_string(const Rational& q);

/// Inverse of to_string; accepts an optional leading sign. Throws RangeError
/// on malformed text or zero denominators.
Rational parse_rational(std::string_view text);

/// Exact complex rational a + b i.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() = default;
  Scalar(Rational real) : re(std::move(real)) {}  // NOLINT: implicit by design of the algebra
  Scalar(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  Scalar(long v) : re(v) {}  // NOLINT

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  /// re^2 + im^2.
  Rational abs_squared() const { return re * re + im * im; }

  Scalar conj() const { return {re, -im}; }

  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator-(const Scalar& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const Scalar& z);

/// Non-negative real value stored through its exact square. All seminorm
/// values on the Walsh algebra have the form 2^j |z| with z complex rational,
/// so the square is always rational.
class SeminormValue {
 public:
  SeminormValue() = default;

  static SeminormValue from_squared(Rational squared);
  static SeminormValue from_modulus(const Scalar& z) { return from_squared(z.abs_squared()); }
  static SeminormValue from_rational(const Rational& v) { return from_squared(v * v); }

  const Rational& squared() const { return squared_; }
  bool is_zero() const { return sgn(squared_) == 0; }

  /// value * 2^e.
  SeminormValue scaled_pow2(int e) const;

  /// The value itself when the square is a perfect rational square.
  std::optional<Rational> exact() const;

  /// sqrt(squared) rounded to `digits` significant decimal digits, trailing
  /// zeros removed.
  std::string decimal(unsigned digits = 12) const;

  friend bool operator==(const SeminormValue& a, const SeminormValue& b) {
    return a.squared_ == b.squared_;
  }
  friend std::strong_ordering operator<=>(const SeminormValue& a, const SeminormValue& b) {
    const int c = cmp(a.squared_, b.squared_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit SeminormValue(Rational sq) : squared_(std::move(sq)) {}
  Rational squared_;
};

/// Decimal rendering of sqrt(q) for q >= 0, `digits` significant digits.
std::string sqrt_decimal(const Rational& q, unsigned digits);

/// Decimal rendering of a rational, `digits` significant digits.
std::string rational_decimal(const Rational& q, unsigned digits);

}  // namespace cantorlip
