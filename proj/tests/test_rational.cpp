#include <doctest.h>

#include <string>

#include "cantorlip/errors.hpp"
#include "cantorlip/radicals.hpp"
#include "cantorlip/random.hpp"
#include "cantorlip/rational.hpp"

using namespace cantorlip;

namespace {

// "12.5" -> 25/2, "-0.03" -> -3/100.
Rational decimal_to_rational(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(Integer(s, 10));
  const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  Integer den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return make_rational(Integer(digits, 10), den);
}

// 10^e for any integer e.
Rational pow10(int e) {
  Rational r = 1;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= 10;
  return e < 0 ? Rational(1 / r) : r;
}

int leading_exponent(const Rational& d) {
  int e = 0;
  Rational v = abs(d);
  while (v >= 10) {
    v /= 10;
    ++e;
  }
  while (v < 1) {
    v *= 10;
    --e;
  }
  return e;
}

}  // namespace

TEST_CASE("make_rational reduces and rejects zero denominators") {
  CHECK(make_rational(6, -4) == Rational(-3, 2));
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK_THROWS_AS(make_rational(1, 0), RangeError);
}

TEST_CASE("pow2 covers negative exponents") {
  CHECK(pow2(0) == 1);
  CHECK(pow2(4) == 16);
  CHECK(pow2(-3) == Rational(1, 8));
}

TEST_CASE("parse_rational inverts to_string") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("+4/2") == 2);
  for (const char* bad : {"", "1/", "/2", "a", "1/0", "1//2", "1.5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), RangeError);
  }
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rational q = rng.rational(1000, 97);
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("Scalar arithmetic is exact complex arithmetic") {
  const Scalar a(1, 2);
  const Scalar b(3, -1);
  CHECK(a * b == Scalar(5, 5));
  CHECK(a + b == Scalar(4, 1));
  CHECK(a - b == Scalar(-2, 3));
  CHECK(a.conj() == Scalar(1, -2));
  CHECK(a.abs_squared() == 5);
  CHECK(to_string(Scalar(Rational(1, 2), Rational(-1, 3))) == "1/2-1/3i");
  CHECK(to_string(Scalar(-4)) == "-4");
  CHECK(Scalar(Rational(0), Rational(1)) * Scalar(Rational(0), Rational(1)) == Scalar(-1));
}

TEST_CASE("SeminormValue keeps the exact square") {
  const auto v = SeminormValue::from_modulus(Scalar(3, 4));
  CHECK(v.squared() == 25);
  REQUIRE(v.exact().has_value());
  CHECK(*v.exact() == 5);
  CHECK(v.decimal() == "5");
  CHECK(v.scaled_pow2(1).squared() == 100);
  CHECK(v.scaled_pow2(-1).squared() == Rational(25, 4));

  const auto r2 = SeminormValue::from_squared(2);
  CHECK_FALSE(r2.exact().has_value());
  CHECK(r2.decimal() == "1.41421356237");
  CHECK(r2.decimal(3) == "1.41");
  CHECK(SeminormValue::from_squared(Rational(1, 9)).decimal() == "0.333333333333");
  CHECK(SeminormValue().decimal() == "0");
  CHECK(SeminormValue::from_rational(Rational(999999, 10000)).decimal(3) == "100");

  CHECK(SeminormValue::from_rational(2) < SeminormValue::from_rational(3));
  CHECK(SeminormValue::from_rational(-3) == SeminormValue::from_rational(3));
  CHECK_THROWS_AS(SeminormValue::from_squared(-1), RangeError);
}

TEST_CASE("rational_decimal rounds to significant digits") {
  CHECK(rational_decimal(Rational(1, 3), 5) == "0.33333");
  CHECK(rational_decimal(Rational(2, 3), 3) == "0.667");
  CHECK(rational_decimal(Rational(-5, 2), 12) == "-2.5");
  CHECK(rational_decimal(Rational(123456), 2) == "120000");
  CHECK(rational_decimal(Rational(1, 1000), 4) == "0.001");
}

TEST_CASE("decimal squared agrees with the exact square to the printed precision") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const Rational q = rng.positive_rational(100000, 997) * pow2(static_cast<int>(rng.uniform(-30, 30)));
    const auto digits = static_cast<unsigned>(rng.uniform(1, 20));
    const auto text = SeminormValue::from_squared(q).decimal(digits);
    const Rational d = decimal_to_rational(text);
    const Rational half_ulp = pow10(leading_exponent(d) - static_cast<int>(digits) + 1) / 2;
    CAPTURE(to_string(q));
    CAPTURE(text);
    CHECK((d - half_ulp) * (d - half_ulp) <= q);
    CHECK(q <= (d + half_ulp) * (d + half_ulp));
  }
}

TEST_CASE("radical comparison decides ties exactly") {
  // sqrt(16) against sqrt(4) + sqrt(4)
  const RadicalSum two_plus_two{1, {4, 4}};
  CHECK(compare(SeminormValue::from_squared(16), two_plus_two).order == Ordering::equal);
  CHECK(compare(SeminormValue::from_squared(16), two_plus_two).bits == 0);
  // sqrt(2) + sqrt(3) = 3.146..., squared 5 + 2 sqrt(6)
  const RadicalSum r23{1, {2, 3}};
  CHECK(compare(SeminormValue::from_squared(9), r23).order == Ordering::less);
  CHECK(compare(SeminormValue::from_squared(10), r23).order == Ordering::greater);
  // (sqrt 2 + sqrt 8)^2 = 18 exactly
  CHECK(compare(SeminormValue::from_squared(18), RadicalSum{1, {2, 8}}).order == Ordering::equal);
  CHECK(compare(SeminormValue::from_squared(72), RadicalSum{2, {2, 8}}).order == Ordering::equal);
  CHECK(compare(SeminormValue(), RadicalSum{1, {}}).order == Ordering::equal);
  CHECK(compare(SeminormValue::from_squared(1), RadicalSum{1, {}}).order == Ordering::greater);
  CHECK_THROWS_AS(compare(SeminormValue::from_squared(1), RadicalSum{-1, {1}}), RangeError);
}

TEST_CASE("sqrt enclosures bracket the root") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Rational q = rng.positive_rational(1000000, 1000);
    const auto e = sqrt_enclosure(q, 40);
    CHECK(e.lo * e.lo <= q);
    CHECK(q < e.hi * e.hi);
    CHECK(e.hi - e.lo == pow2(-40));
  }
}
