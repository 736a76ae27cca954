#include <doctest.h>

#include <algorithm>
#include <random>

#include "cantorlip/errors.hpp"
#include "cantorlip/lipnorms.hpp"
#include "cantorlip/optimization.hpp"
#include "cantorlip/random.hpp"
#include "support.hpp"

using namespace cantorlip;
using test::mask_of;
using test::value;

namespace {

Rational lip_value(NormTag tag, const RealVector& alpha, unsigned level) {
  const auto f = to_polynomial(alpha, level);
  const auto v = tag == NormTag::d ? lip_d_formula(f) : lip_lambda(f);
  return *v.exact();
}

}  // namespace

TEST_CASE("coefficient vectors") {
  CHECK(coefficient_dimension(3) == 7);
  const RealVector alpha{4, 1, 1};
  CHECK(to_polynomial(alpha, 2) == test::separating_element());
  CHECK(real_coefficients(test::separating_element()) == alpha);
  CHECK_THROWS_AS(real_coefficients(test::poly(1, {{Scalar(0, 1), mask_of({0})}})), DimensionError);
  CHECK_THROWS_AS(to_polynomial(alpha, 3), DimensionError);
}

TEST_CASE("constraint systems") {
  CHECK(constraints_for(NormTag::d, 2).functionals.size() == 6);
  CHECK(constraints_for(NormTag::lambda, 2).functionals.size() == 6);
  const auto l1 = constraints_for(NormTag::lambda, 1);
  REQUIRE(l1.functionals.size() == 1);
  CHECK(abs(l1.functionals[0].apply({1})) == 2);
  CHECK(constraints_for(NormTag::d, 1).functionals.size() == 1);
  CHECK_THROWS(constraints_for(NormTag::d, 0));

  for (unsigned n = 1; n <= 4; ++n) {
    for (const auto tag : {NormTag::d, NormTag::lambda}) {
      const auto sys = constraints_for(tag, n);
      for (const auto& fn : sys.functionals) {
        CHECK(fn.coeffs.size() == coefficient_dimension(n));
        bool power = false;
        for (unsigned k = 0; k < n; ++k) power = power || fn.scale == pow2(static_cast<int>(k) + 1);
        CHECK(power);
      }
      // At most one functional per unordered pair for d, per (k, x) for lambda.
      const std::size_t points = std::size_t{1} << n;
      CHECK(sys.functionals.size() <= (tag == NormTag::d ? points * (points - 1) / 2 : n * points));
    }
  }
}

TEST_CASE("constraint systems reproduce the seminorms") {
  Rng rng(200);
  for (unsigned n = 1; n <= 3; ++n) {
    const auto d = constraints_for(NormTag::d, n);
    const auto l = constraints_for(NormTag::lambda, n);
    for (int i = 0; i < 200; ++i) {
      RealVector alpha(coefficient_dimension(n));
      for (auto& a : alpha) a = rng.rational(9, 5);
      const auto f = to_polynomial(alpha, n);
      CHECK(value(d.value(alpha)) == lip_d_formula(f));
      CHECK(value(l.value(alpha)) == lip_lambda(f));
    }
  }
}

TEST_CASE("lp_maximize") {
  const auto d1 = constraints_for(NormTag::d, 1);
  const auto zero = lp_maximize({0}, d1);
  CHECK(zero.status == LpStatus::optimal);
  CHECK(zero.value == 0);

  const auto half = lp_maximize({1}, d1);
  CHECK(half.status == LpStatus::optimal);
  CHECK(half.value == Rational(1, 2));
  CHECK(half.optimizer == RealVector{Rational(1, 2)});

  CHECK_THROWS_AS(lp_maximize({1, 2}, d1), DimensionError);

  // The optimizer is feasible and attains the value.
  Rng rng(201);
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto tag : {NormTag::d, NormTag::lambda}) {
      const auto sys = constraints_for(tag, n);
      for (int i = 0; i < 10; ++i) {
        const auto obj = random_integer_vector(rng, sys.dimension(), 5);
        const auto sol = lp_maximize(obj, sys);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sys.value(sol.optimizer) <= 1);
        Rational at;
        for (std::size_t j = 0; j < obj.size(); ++j) at += obj[j] * sol.optimizer[j];
        CHECK(at == sol.value);
      }
    }
  }
}

TEST_CASE("lp value is invariant under constraint order") {
  Rng rng(202);
  std::mt19937_64 shuffler(7);
  for (unsigned n = 2; n <= 3; ++n) {
    for (const auto tag : {NormTag::d, NormTag::lambda}) {
      const auto sys = constraints_for(tag, n);
      for (int i = 0; i < 5; ++i) {
        const auto obj = random_integer_vector(rng, sys.dimension(), 7);
        auto shuffled = sys;
        std::shuffle(shuffled.functionals.begin(), shuffled.functionals.end(), shuffler);
        CHECK(lp_maximize(obj, shuffled).value == lp_maximize(obj, sys).value);
      }
    }
  }
}

TEST_CASE("Monge-Kantorovich distances") {
  CHECK(mk_distance(NormTag::d, CantorPoint::from_bits("00"), CantorPoint::from_bits("10")) == 1);
  CHECK(mk_distance(NormTag::d, CantorPoint::from_bits("00"), CantorPoint::from_bits("01")) == Rational(1, 2));
  CHECK(mk_distance(NormTag::lambda, CantorPoint::from_bits("01"), CantorPoint::from_bits("01")) == 0);
  CHECK_THROWS_AS(mk_distance(NormTag::d, CantorPoint::from_bits("0"), CantorPoint::from_bits("00")), LevelError);

  const auto sol = mk_distance_solution(NormTag::d, CantorPoint::from_bits("000"), CantorPoint::from_bits("001"));
  const auto g = to_polynomial(sol.optimizer, 3);
  CHECK(lip_d_formula(g) <= value(1));
  CHECK((evaluate(g, CantorPoint::from_bits("000")) - evaluate(g, CantorPoint::from_bits("001"))) == Scalar(sol.value));

  for (unsigned n = 2; n <= 3; ++n) {
    const std::uint32_t size = 1U << n;
    for (const auto tag : {NormTag::d, NormTag::lambda}) {
      std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
      for (std::uint32_t x = 0; x < size; ++x) {
        for (std::uint32_t y = 0; y < size; ++y) m[x][y] = mk_distance(tag, CantorPoint(n, x), CantorPoint(n, y));
      }
      for (std::uint32_t x = 0; x < size; ++x) {
        for (std::uint32_t y = 0; y < size; ++y) {
          CHECK(m[x][y] == m[y][x]);
          const auto d = cantor_distance(CantorPoint(n, x), CantorPoint(n, y));
          if (tag == NormTag::d) CHECK(value(m[x][y]) == d);
          if (tag == NormTag::lambda) {
            CHECK(value(m[x][y]) <= d);
            CHECK(value(2 * m[x][y]) >= d);
          }
          for (std::uint32_t z = 0; z < size; ++z) CHECK(m[x][y] <= m[x][z] + m[z][y]);
        }
      }
    }
  }
}

TEST_CASE("unit ball vertices") {
  const auto v1 = unit_ball_vertices(constraints_for(NormTag::d, 1));
  CHECK(v1 == std::vector<RealVector>{{Rational(-1, 2)}, {Rational(1, 2)}});
  for (const auto tag : {NormTag::d, NormTag::lambda}) {
    const auto sys = constraints_for(tag, 2);
    const auto verts = unit_ball_vertices(sys);
    CHECK(!verts.empty());
    CHECK(std::is_sorted(verts.begin(), verts.end(), [](const RealVector& a, const RealVector& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }));
    for (const auto& v : verts) {
      CHECK(sys.value(v) == 1);
      RealVector neg(v);
      for (auto& x : neg) x = -x;
      CHECK(std::find(verts.begin(), verts.end(), neg) != verts.end());
    }
    // LP optima over the ball are attained at listed vertices.
    Rng rng(203);
    for (int i = 0; i < 10; ++i) {
      const auto obj = random_integer_vector(rng, sys.dimension(), 9);
      Rational best;
      bool first = true;
      for (const auto& v : verts) {
        Rational at;
        for (std::size_t j = 0; j < obj.size(); ++j) at += obj[j] * v[j];
        if (first || at > best) best = at;
        first = false;
      }
      CHECK(best == lp_maximize(obj, sys).value);
    }
  }
  CHECK_THROWS_AS(unit_ball_vertices(constraints_for(NormTag::d, 4)), UnsupportedError);
}

TEST_CASE("equivalence ratios") {
  const auto r1 = equivalence_ratio(1, {});
  CHECK(r1.ratio_up == 1);
  CHECK(r1.ratio_down == 1);

  const auto r2 = equivalence_ratio(2, {});
  CHECK(r2.ratio_down == 1);
  // 4u0 + u1 + u0u1 already reaches 6/5.
  CHECK(r2.ratio_up >= Rational(6, 5));
  CHECK(r2.ratio_up <= 2);
  const auto& w = r2.up_witness;
  CHECK(w.d_value == lip_value(NormTag::d, w.alpha, 2));
  CHECK(w.lambda_value == lip_value(NormTag::lambda, w.alpha, 2));
  CHECK(w.lambda_value / w.d_value == r2.ratio_up);

  for (unsigned n = 1; n <= 3; ++n) {
    const auto exact = n == 2 ? r2 : equivalence_ratio(n, {});
    const auto [up, down] = equivalence_ratio_lp(n);
    CHECK(up == exact.ratio_up);
    CHECK(down == exact.ratio_down);
  }

  RatioOptions sample;
  sample.mode = RatioMode::sample;
  sample.samples = 10000;
  sample.seed = 77;
  const auto s2 = equivalence_ratio(2, sample);
  CHECK(s2.ratio_up <= r2.ratio_up);
  CHECK(s2.ratio_down <= r2.ratio_down);
  CHECK(s2.samples == 10000);
  const auto again = equivalence_ratio(2, sample);
  CHECK(again.ratio_up == s2.ratio_up);
  CHECK(again.up_witness.alpha == s2.up_witness.alpha);
  CHECK(again.down_witness.alpha == s2.down_witness.alpha);

  CHECK_THROWS_AS(equivalence_ratio(4, {}), UnsupportedError);
}

TEST_CASE("separator search") {
  SearchOptions opts;
  opts.samples = 300;
  opts.seed = 5;
  const auto found = find_separators(2, opts);
  CHECK(found.size() >= opts.family_samples);
  for (const auto& s : found) {
    CHECK(s.d_value != s.lambda_value);
    CHECK(s.d_value == lip_d_formula(s.polynomial));
    CHECK(s.lambda_value == lip_lambda(s.polynomial));
  }
  const auto again = find_separators(2, opts);
  REQUIRE(again.size() == found.size());
  for (std::size_t i = 0; i < found.size(); ++i) CHECK(again[i].polynomial == found[i].polynomial);

  // (10, 3, 3) sits in the family.
  const auto f = to_polynomial({10, 3, 3}, 2);
  CHECK(lip_d_formula(f) == value(26));
  CHECK(lip_lambda(f) == value(32));
  CHECK(closed_form_a2_d(10, 3, 3) == value(26));
  CHECK(closed_form_a2_lambda(10, 3, 3) == value(32));

  CHECK_THROWS(find_separators(1, opts));
}
