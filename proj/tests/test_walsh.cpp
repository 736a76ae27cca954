#include <doctest.h>

#include "cantorlip/errors.hpp"
#include "cantorlip/random.hpp"
#include "cantorlip/walsh.hpp"
#include "support.hpp"

using namespace cantorlip;
using test::mask_of;
using test::u;

namespace {

// prod_{j in F} (2 x_j - 1), coordinate by coordinate.
int direct_sign(SubsetMask m, std::uint32_t word) {
  int s = 1;
  for (unsigned j = 0; j < 32; ++j) {
    if (m.contains(j)) s *= 2 * static_cast<int>((word >> j) & 1U) - 1;
  }
  return s;
}

Scalar direct_value(const WalshPolynomial& f, std::uint32_t word) {
  Scalar v;
  for (const auto& [m, c] : f.coeffs()) v += c * Scalar(direct_sign(m, word));
  return v;
}

}  // namespace

TEST_CASE("subset masks") {
  const auto m = mask_of({0, 3});
  CHECK(m.size() == 2);
  CHECK(m.max_element() == 3);
  CHECK(m.required_level() == 4);
  CHECK(SubsetMask().required_level() == 0);
  CHECK((mask_of({0, 1}) ^ mask_of({1})) == mask_of({0}));
}

TEST_CASE("points follow the leftmost-is-x0 literal") {
  const auto p = CantorPoint::from_bits("10");
  CHECK(p.level() == 2);
  CHECK(p.coordinate(0) == 1);
  CHECK(p.coordinate(1) == 0);
  CHECK(p.to_bits() == "10");
  CHECK(p.lifted(4).to_bits() == "1000");
  CHECK_THROWS_AS(CantorPoint(2, 4), LevelError);
  CHECK_THROWS_AS(CantorPoint::from_bits("102"), RangeError);
  CHECK_THROWS(CantorPoint(kMaxLevel + 1, 0));
}

TEST_CASE("construction enforces the level cap and canonical form") {
  CHECK_THROWS_AS(WalshPolynomial(kMaxLevel + 1), LevelError);
  CHECK_THROWS_AS(WalshPolynomial::basis(mask_of({2}), 2), LevelError);
  WalshPolynomial f(2);
  f += u({0}, 2);
  f -= u({0}, 2);
  CHECK(f.is_zero());
  CHECK(f.coeffs().empty());
  CHECK(WalshPolynomial::eta(0, 1) == WalshPolynomial(1, {{SubsetMask(), Rational(1, 2)}, {mask_of({0}), Rational(1, 2)}}));
}

TEST_CASE("multiply follows u_j^2 = 1 and XOR of masks") {
  CHECK(multiply(u({0}, 1), u({0}, 1)) == WalshPolynomial::constant(1, 1));
  CHECK(multiply(u({0}, 2), u({1}, 2)) == u({0, 1}, 2));
  CHECK(multiply(u({0, 1}, 2), u({1}, 2)) == u({0}, 2));
  // eta_j is a projection: eta^2 = eta.
  const auto e = WalshPolynomial::eta(2, 3);
  CHECK(e * e == e);
}

TEST_CASE("algebra laws on random samples") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 5));
    const auto f = random_polynomial(rng, n);
    const auto g = random_polynomial(rng, n);
    const auto h = random_polynomial(rng, n);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * WalshPolynomial::constant(1, n) == f);
    CHECK((f * g).conjugate() == f.conjugate() * g.conjugate());
  }
}

TEST_CASE("lift_level") {
  const auto f = u({0}, 1);
  const auto g = lift_level(f, 3);
  CHECK(g.level() == 3);
  CHECK(g.coeffs() == f.coeffs());
  CHECK_THROWS_AS(lift_level(g, 2), LevelError);

  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 4));
    const auto a = random_polynomial(rng, n);
    const auto b = random_polynomial(rng, n);
    CHECK(lift_level(a * b, n + 2) == lift_level(a, n + 2) * lift_level(b, n + 2));
    CHECK(sup_norm(lift_level(a, n + 2)) == sup_norm(a));
    CHECK(lambda_state(lift_level(a, n + 2)) == lambda_state(a));
    for (unsigned k = 0; k <= n + 1; ++k) {
      CHECK(conditional_expectation(lift_level(a, n + 2), k) == lift_level(conditional_expectation(a, k), n + 2));
    }
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
      const CantorPoint p(n, x);
      CHECK(evaluate(lift_level(a, n + 2), p.lifted(n + 2)) == evaluate(a, p));
    }
  }
  // Mixed levels lift to the larger operand.
  CHECK((u({0}, 1) + u({2}, 3)).level() == 3);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(u({0}, 1), CantorPoint::from_bits("0")) == Scalar(-1));
  CHECK(evaluate(u({0, 1}, 2), CantorPoint::from_bits("10")) == Scalar(-1));
  CHECK(evaluate(test::separating_element(), CantorPoint::from_bits("11")) == Scalar(6));
  CHECK_THROWS_AS(evaluate(u({0}, 2), CantorPoint::from_bits("0")), LevelError);
}

TEST_CASE("evaluate_all") {
  for (const auto& v : evaluate_all(WalshPolynomial::constant(1, 3))) CHECK(v == Scalar(1));
  const auto t = evaluate_all(u({0}, 1));
  REQUIRE(t.size() == 2);
  CHECK(t[0] == Scalar(-1));
  CHECK(t[1] == Scalar(1));

  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 8));
    PolynomialSampling s;
    s.complex = rng.coin();
    s.density_percent = 30;
    const auto f = random_polynomial(rng, n, s);
    const auto table = evaluate_all(f);
    REQUIRE(table.size() == (std::size_t{1} << n));
    bool all = true;
    for (std::uint32_t x = 0; x < table.size(); ++x) {
      all = all && table[x] == evaluate(f, CantorPoint(n, x)) && table[x] == direct_value(f, x);
    }
    CHECK(all);
  }
}

TEST_CASE("evaluation is an algebra homomorphism") {
  Rng rng(10);
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(1, 6));
    const auto f = random_polynomial(rng, n);
    const auto g = random_polynomial(rng, n);
    const auto fg = evaluate_all(f * g);
    const auto tf = evaluate_all(f);
    const auto tg = evaluate_all(g);
    bool all = true;
    for (std::size_t x = 0; x < fg.size(); ++x) all = all && fg[x] == tf[x] * tg[x];
    CHECK(all);
  }
}

TEST_CASE("sup_norm") {
  CHECK(sup_norm(u({0, 1}, 2)) == test::value(1));
  CHECK(sup_norm(WalshPolynomial::zero(3)).is_zero());
  CHECK(sup_norm(test::separating_element()) == test::value(6));
  // (1+i) u0 + u1 takes |2+i| at x = 11.
  const auto f = test::poly(2, {{Scalar(1, 1), mask_of({0})}, {1, mask_of({1})}});
  CHECK(sup_norm(f).squared() == 5);
}

TEST_CASE("lambda_state") {
  CHECK(lambda_state(u({0, 1}, 2)) == Scalar());
  CHECK(lambda_state(WalshPolynomial::constant(1, 2)) == Scalar(1));
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 6));
    const auto f = random_polynomial(rng, n);
    Scalar sum;
    for (const auto& v : evaluate_all(f)) sum += v;
    const Rational inv = pow2(-static_cast<int>(n));
    CHECK(lambda_state(f) == Scalar(sum.re * inv, sum.im * inv));
    // Positivity on f f*.
    const Scalar p = lambda_state(f * f.conjugate());
    CHECK(p.is_real());
    CHECK(sgn(p.re) >= 0);
    for (unsigned k = 0; k <= n; ++k) CHECK(lambda_state(conditional_expectation(f, k)) == lambda_state(f));
  }
}

TEST_CASE("conditional_expectation") {
  for (unsigned j = 0; j < 6; ++j) CHECK(conditional_expectation(u({j}, j + 1), 0).is_zero());
  CHECK(conditional_expectation(u({0, 1}, 2), 2) == u({0, 1}, 2));
  CHECK(conditional_expectation(u({0, 1}, 2), 1).is_zero());
  for (unsigned k = 0; k < 5; ++k) {
    CHECK(conditional_expectation(WalshPolynomial::constant(1, 3), k) == WalshPolynomial::constant(1, 3));
  }
  CHECK(conditional_expectation(test::separating_element(), 1) == test::poly(2, {{4, mask_of({0})}}));
  CHECK(conditional_expectation(test::separating_element(), 7) == test::separating_element());

  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(1, 6));
    const auto k = static_cast<unsigned>(rng.uniform(0, n));
    const auto m = static_cast<unsigned>(rng.uniform(0, n));
    const auto f = random_polynomial(rng, n);
    const auto e = conditional_expectation(f, k);
    CHECK(e.level() == n);
    CHECK(conditional_expectation(e, k) == e);
    CHECK(conditional_expectation(e, m) == conditional_expectation(f, std::min(k, m)));
    CHECK(sup_norm(e) <= sup_norm(f));
    const auto a = random_polynomial(rng, k).lifted(n);
    const auto c = random_polynomial(rng, k).lifted(n);
    CHECK(conditional_expectation(a * f * c, k) == a * e * c);
  }
}

TEST_CASE("cantor distance") {
  const auto x = CantorPoint::from_bits("00");
  CHECK(cantor_distance(x, x).is_zero());
  CHECK_FALSE(first_diff(x, x).has_value());
  CHECK(cantor_distance(x, CantorPoint::from_bits("10")) == test::value(1));
  CHECK(cantor_distance(x, CantorPoint::from_bits("01")) == test::value(Rational(1, 2)));
  CHECK(first_diff(x, CantorPoint::from_bits("01")) == 1U);
  CHECK_THROWS_AS(cantor_distance(x, CantorPoint::from_bits("000")), LevelError);
}
