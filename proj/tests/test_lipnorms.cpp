#include <doctest.h>

#include <algorithm>
#include <set>

#include "cantorlip/errors.hpp"
#include "cantorlip/lipnorms.hpp"
#include "cantorlip/radicals.hpp"
#include "cantorlip/random.hpp"
#include "support.hpp"

using namespace cantorlip;
using test::mask_of;
using test::u;
using test::value;

namespace {

WalshPolynomial a2(const Scalar& a0, const Scalar& a1, const Scalar& a2) {
  return test::poly(2, {{a0, mask_of({0})}, {a1, mask_of({1})}, {a2, mask_of({0, 1})}});
}

// Largest of 2^{-k}-scaled pair differences straight from the table.
SeminormValue lip_d_by_pairs(const WalshPolynomial& f) {
  const auto t = evaluate_all(f);
  Rational best;
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    for (std::uint32_t y = x + 1; y < t.size(); ++y) {
      const auto d = cantor_distance(CantorPoint(f.level(), x), CantorPoint(f.level(), y));
      const Rational q = (t[x] - t[y]).abs_squared() / d.squared();
      if (q > best) best = q;
    }
  }
  return SeminormValue::from_squared(best);
}

}  // namespace

TEST_CASE("sigma sets") {
  const auto s = sigma_set(CantorPoint::from_bits("00"), CantorPoint::from_bits("10"));
  CHECK(s.k == 0);
  REQUIRE(s.members.size() == 2);
  CHECK(std::set<SubsetMask>(s.members.begin(), s.members.end()) == std::set<SubsetMask>{mask_of({0}), mask_of({0, 1})});
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    // u0(00) - u0(10) = -2 and u0u1(00) - u0u1(10) = 1 - (-1) = 2.
    CHECK(s.signs[i] == (s.members[i] == mask_of({0}) ? -1 : 1));
  }
  CHECK_THROWS_AS(sigma_set(CantorPoint::from_bits("01"), CantorPoint::from_bits("01")), UndefinedPairError);

  for (unsigned n = 1; n <= 5; ++n) {
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
      for (std::uint32_t y = 0; y < (1U << n); ++y) {
        if (x == y) continue;
        const auto set = sigma_set(CantorPoint(n, x), CantorPoint(n, y));
        CHECK(set.members.size() == (std::size_t{1} << (n - 1)));
        std::set<std::uint32_t> members;
        for (std::size_t i = 0; i < set.members.size(); ++i) {
          const int diff = basis_sign(set.members[i], x) - basis_sign(set.members[i], y);
          CHECK(diff == 2 * set.signs[i]);
          members.insert(set.members[i].bits);
        }
        for (std::uint32_t a = 1; a < (1U << n); ++a) {
          if (members.count(a) == 0) CHECK(basis_sign(SubsetMask(a), x) == basis_sign(SubsetMask(a), y));
        }
      }
    }
  }
}

TEST_CASE("rho sets") {
  const auto r0 = rho_set(0, 2);
  CHECK(std::set<SubsetMask>(r0.members.begin(), r0.members.end()) ==
        std::set<SubsetMask>{mask_of({0}), mask_of({1}), mask_of({0, 1})});
  const auto r1 = rho_set(1, 2);
  CHECK(std::set<SubsetMask>(r1.members.begin(), r1.members.end()) == std::set<SubsetMask>{mask_of({1}), mask_of({0, 1})});
  CHECK(rho_set(3, 5).members.size() == 24);
  CHECK_THROWS_AS(rho_set(2, 2), RangeError);
  for (unsigned n = 1; n <= 6; ++n) {
    for (unsigned k = 0; k < n; ++k) {
      const auto r = rho_set(k, n);
      CHECK(r.members.size() == (std::size_t{1} << n) - (std::size_t{1} << k));
      std::set<std::uint32_t> seen;
      for (auto m : r.members) {
        CHECK(m.max_element() >= k);
        seen.insert(m.bits);
      }
      // members, the masks inside {0..k-1} and the unit partition all masks
      for (std::uint32_t a = 0; a < (1U << n); ++a) {
        const bool low = a < (1U << k);
        CHECK(low != (seen.count(a) == 1));
      }
    }
  }
}

TEST_CASE("basis elements") {
  CHECK(basis_norm(mask_of({0})) == value(2));
  CHECK(basis_norm(mask_of({0, 3})) == value(16));
  CHECK(basis_norm(mask_of({5})) == value(64));
  CHECK(basis_norm(SubsetMask()).is_zero());
  for (std::uint32_t bits = 1; bits < 64; ++bits) {
    const SubsetMask m(bits);
    const auto f = WalshPolynomial::basis(m, 6);
    const auto expected = value(pow2(static_cast<int>(m.max_element()) + 1));
    CHECK(lip_d_formula(f) == expected);
    CHECK(lip_d_fast(f) == expected);
    CHECK(lip_lambda(f) == expected);
    CHECK(lip_lambda_formula(f) == expected);
  }
  CHECK(lip_d_fast(u({3}, 4)) == value(16));
}

TEST_CASE("separating element") {
  const auto f = test::separating_element();
  CHECK(lip_d_formula(f) == value(10));
  CHECK(lip_d_fast(f) == value(10));
  CHECK(lip_lambda(f) == value(12));
  CHECK(lip_lambda_formula(f) == value(12));
  CHECK(closed_form_a2_d(4, 1, 1) == value(10));
  CHECK(closed_form_a2_lambda(4, 1, 1) == value(12));
}

TEST_CASE("A1 closed form") {
  CHECK(closed_form_a1(0, 1) == value(2));
  CHECK(closed_form_a1(7, 0).is_zero());
  CHECK(closed_form_a1(1, Scalar(0, 1)) == value(2));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Scalar a0 = random_scalar(rng, {});
    const Scalar a1 = random_scalar(rng, {});
    const auto f = test::poly(1, {{a0, SubsetMask()}, {a1, mask_of({0})}});
    const auto expected = SeminormValue::from_squared(4 * a1.abs_squared());
    CHECK(closed_form_a1(a0, a1) == expected);
    CHECK(lip_d_formula(f) == expected);
    CHECK(lip_d_fast(f) == expected);
    CHECK(lip_lambda(f) == expected);
    CHECK(lip_lambda_formula(f) == expected);
  }
}

TEST_CASE("A2 closed forms match the general formulas") {
  CHECK(closed_form_a2_d(0, 0, 0).is_zero());
  CHECK(closed_form_a2_lambda(Rational(-3), 0, 0) == value(6));
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const Scalar a0 = random_scalar(rng, {});
    const Scalar a1 = random_scalar(rng, {});
    const Scalar a2c = random_scalar(rng, {});
    const auto f = a2(a0, a1, a2c);
    const auto d = closed_form_a2_d(a0, a1, a2c);
    const auto l = closed_form_a2_lambda(a0, a1, a2c);
    CHECK(d == lip_d_formula(f));
    CHECK(d == lip_d_fast(f));
    CHECK(d == lip_d_by_pairs(f));
    CHECK(l == lip_lambda(f));
    CHECK(l == lip_lambda_formula(f));
    CHECK(d.squared() <= l.squared());
    CHECK(l.squared() <= 4 * d.squared());
  }
}

TEST_CASE("parametric separating family") {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Rational t = rng.positive_rational(20, 7);
    const Rational a0 = 2 * t + rng.positive_rational(20, 7);
    const auto f = a2(a0, t, t);
    CHECK(lip_d_formula(f) == value(std::max(Rational(2 * (a0 + t)), Rational(8 * t))));
    CHECK(lip_lambda(f) == value(2 * (a0 + 2 * t)));
  }
}

TEST_CASE("rho sums at x = 11 carry positive signs") {
  // Every basis element is +1 at x = 11, so the k = 0 term is |a0 + a1 + a2|.
  const auto f = a2(1, 2, 3);
  CHECK(lip_lambda_formula(f) >= value(2 * 6));
}

TEST_CASE("fast kernel and formula agree with brute force") {
  Rng rng(21);
  for (unsigned n = 1; n <= 8; ++n) {
    const int rounds = n <= 6 ? 60 : 20;
    for (int i = 0; i < rounds; ++i) {
      PolynomialSampling s;
      s.complex = rng.coin();
      const auto f = random_polynomial(rng, n, s);
      const auto d = lip_d_formula(f);
      CHECK(d == lip_d_fast(f));
      if (n <= 6) CHECK(d == lip_d_by_pairs(f));
      CHECK(lip_lambda(f) == lip_lambda_formula(f));
    }
  }
}

TEST_CASE("large coefficients take the arbitrary-precision path") {
  const Rational big = make_rational(Integer("123456789012345678901234567890"), 7);
  const auto f = test::poly(3, {{big, mask_of({0})}, {Scalar(Rational(1, 3), big), mask_of({2})}, {5, mask_of({1, 2})}});
  CHECK(lip_d_formula(f) == lip_d_fast(f));
  CHECK(lip_d_formula(f) == lip_d_by_pairs(f));
  CHECK(lip_lambda(f) == lip_lambda_formula(f));
}

TEST_CASE("seminorm axioms") {
  Rng rng(31);
  for (int i = 0; i < 80; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 5));
    const auto f = random_polynomial(rng, n);
    const auto g = random_polynomial(rng, n);
    const Scalar c = random_scalar(rng, {});
    for (auto norm : {&lip_d_formula, &lip_d_fast, &lip_lambda, &lip_lambda_formula}) {
      const auto lf = norm(f);
      CHECK(norm(f.scaled(c)).squared() == c.abs_squared() * lf.squared());
      CHECK(less_or_equal(norm(f + g), RadicalSum{1, {lf.squared(), norm(g).squared()}}));
      CHECK(norm(f.conjugate()) == lf);
      CHECK(norm(WalshPolynomial::constant(c, n)).is_zero());
      CHECK(norm(f + WalshPolynomial::constant(c, n)) == lf);
    }
  }
  // Non-constant elements have a positive seminorm.
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(1, 5));
    const auto f = random_nonconstant_polynomial(rng, n);
    CHECK_FALSE(lip_d_formula(f).is_zero());
    CHECK_FALSE(lip_lambda(f).is_zero());
  }
}

TEST_CASE("both seminorms are unchanged by lifting") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(0, 4));
    const auto f = random_polynomial(rng, n);
    const auto g = f.lifted(n + 2);
    CHECK(lip_d_formula(g) == lip_d_formula(f));
    CHECK(lip_d_fast(g) == lip_d_fast(f));
    CHECK(lip_lambda(g) == lip_lambda(f));
    CHECK(lip_lambda_formula(g) == lip_lambda_formula(f));
  }
}

TEST_CASE("zero and constants") {
  CHECK(lip_d_fast(WalshPolynomial::zero(4)).is_zero());
  CHECK(lip_d_formula(WalshPolynomial::zero(0)).is_zero());
  CHECK(lip_lambda(WalshPolynomial::constant(Rational(7, 3), 3)).is_zero());
  CHECK(lip_lambda_formula(WalshPolynomial::constant(Scalar(1, 1), 0)).is_zero());
}
