#include "cantorlip/optimization.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "cantorlip/errors.hpp"
#include "cantorlip/lipnorms.hpp"
#include "cantorlip/parallel.hpp"
#include "cantorlip/random.hpp"
#include "simplex.hpp"

namespace cantorlip {

std::string_view to_string(NormTag tag) { return tag == NormTag::d ? "d" : "lambda"; }

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::unbounded:
      return "unbounded";
    case LpStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

std::size_t coefficient_dimension(unsigned level) {
  if (level > kMaxLevel) throw LevelError("level exceeds the cap");
  return (std::size_t{1} << level) - 1;
}

WalshPolynomial to_polynomial(const RealVector& alpha, unsigned level) {
  if (alpha.size() != coefficient_dimension(level)) throw DimensionError("coefficient vector has the wrong dimension");
  WalshPolynomial::CoeffMap coeffs;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (sgn(alpha[i]) != 0) coeffs.emplace(SubsetMask(static_cast<std::uint32_t>(i + 1)), Scalar(alpha[i]));
  }
  return {level, std::move(coeffs)};
}

RealVector real_coefficients(const WalshPolynomial& f) {
  RealVector alpha(coefficient_dimension(f.level()));
  for (const auto& [mask, c] : f.coeffs()) {
    if (!c.is_real()) throw DimensionError("polynomial has a non-real coefficient");
    if (!mask.empty()) alpha[mask.bits - 1] = c.re;
  }
  return alpha;
}

Rational LinearFunctional::apply(const RealVector& alpha) const {
  if (alpha.size() != coeffs.size()) throw DimensionError("functional and vector dimensions differ");
  Rational s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) != 0 && sgn(alpha[i]) != 0) s += coeffs[i] * alpha[i];
  }
  return scale * s;
}

Rational ConstraintSystem::value(const RealVector& alpha) const {
  Rational best;
  for (const auto& fn : functionals) {
    Rational v = abs(fn.apply(alpha));
    if (v > best) best = std::move(v);
  }
  return best;
}

namespace {

// Adds fn unless it (or its negation) is already present.
class FunctionalCollector {
 public:
  void add(LinearFunctional fn) {
    const auto lead = std::find_if(fn.coeffs.begin(), fn.coeffs.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (lead == fn.coeffs.end()) return;
    if (sgn(*lead) < 0) {
      for (auto& q : fn.coeffs) q = -q;
    }
    std::vector<Rational> key = fn.coeffs;
    for (auto& q : key) q *= fn.scale;
    if (seen_.insert(std::move(key)).second) out_.push_back(std::move(fn));
  }
  std::vector<LinearFunctional> take() { return std::move(out_); }

 private:
  struct Less {
    bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
    }
  };
  std::set<std::vector<Rational>, Less> seen_;
  std::vector<LinearFunctional> out_;
};

}  // namespace

ConstraintSystem constraints_for(NormTag norm, unsigned level) {
  if (level == 0) throw RangeError("constraint systems need level >= 1");
  const std::size_t dim = coefficient_dimension(level);
  const std::uint32_t points = std::uint32_t{1} << level;
  FunctionalCollector collector;
  if (norm == NormTag::d) {
    for (std::uint32_t x = 0; x < points; ++x) {
      for (std::uint32_t y = x + 1; y < points; ++y) {
        const auto k = static_cast<int>(std::countr_zero(x ^ y));
        LinearFunctional fn{std::vector<Rational>(dim), pow2(k + 1)};
        for (std::size_t i = 0; i < dim; ++i) fn.coeffs[i] = sigma_sign(SubsetMask(static_cast<std::uint32_t>(i + 1)), x, y);
        collector.add(std::move(fn));
      }
    }
  } else {
    for (unsigned k = 0; k < level; ++k) {
      for (std::uint32_t x = 0; x < points; ++x) {
        LinearFunctional fn{std::vector<Rational>(dim), pow2(static_cast<int>(k) + 1)};
        for (std::size_t i = 0; i < dim; ++i) {
          const SubsetMask a(static_cast<std::uint32_t>(i + 1));
          if (a.max_element() >= k) fn.coeffs[i] = basis_sign(a, x);
        }
        collector.add(std::move(fn));
      }
    }
  }
  return {level, norm, collector.take()};
}

LPSolution lp_maximize(const RealVector& objective, const ConstraintSystem& system) {
  const std::size_t dim = system.dimension();
  if (objective.size() != dim) throw DimensionError("objective dimension does not match the constraint system");
  if (system.functionals.empty()) throw DimensionError("empty constraint system");

  // Primal: max c.alpha s.t. R alpha <= 1 with R = [G; -G].
  // Dual:   min 1.w s.t. R^T w = c, w >= 0.
  std::vector<RealVector> rows;
  rows.reserve(2 * system.functionals.size());
  for (int sign : {1, -1}) {
    for (const auto& fn : system.functionals) {
      if (fn.coeffs.size() != dim) throw DimensionError("functional dimension mismatch");
      RealVector r(dim);
      for (std::size_t i = 0; i < dim; ++i) r[i] = sign * fn.scale * fn.coeffs[i];
      rows.push_back(std::move(r));
    }
  }
  std::vector<RealVector> a(dim, RealVector(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = rows[j][i];
  }
  const std::vector<Rational> cost(rows.size(), Rational(1));
  const auto dual = detail::simplex_minimize(a, objective, cost);

  LPSolution out;
  out.pivots = dual.pivots;
  if (dual.status == LpStatus::infeasible) {
    out.status = LpStatus::unbounded;
    return out;
  }
  if (dual.status != LpStatus::optimal) throw std::logic_error("dual program cannot be unbounded below zero");
  if (dual.dropped_rows != 0) throw UnsupportedError("constraint system does not span the coefficient space");

  // The optimal dual basis names dim primal constraints that are tight at an
  // optimal primal vertex.
  std::vector<RealVector> tight;
  tight.reserve(dim);
  for (std::size_t col : dual.basis) tight.push_back(rows[col]);
  RealVector alpha = detail::solve_square(std::move(tight), RealVector(dim, Rational(1)));

  Rational value;
  for (std::size_t i = 0; i < dim; ++i) value += objective[i] * alpha[i];
  if (value != dual.value) throw std::logic_error("primal and dual objective values disagree");
  if (system.value(alpha) > 1) throw std::logic_error("recovered primal vertex violates a constraint");

  out.status = LpStatus::optimal;
  out.value = std::move(value);
  out.optimizer = std::move(alpha);
  return out;
}

LPSolution mk_distance_solution(NormTag norm, const CantorPoint& x, const CantorPoint& y) {
  if (x.level() != y.level()) throw LevelError("points live at different levels");
  if (x == y) {
    LPSolution zero;
    zero.status = LpStatus::optimal;
    zero.optimizer.assign(coefficient_dimension(x.level()), Rational());
    return zero;
  }
  const std::size_t dim = coefficient_dimension(x.level());
  RealVector objective(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const SubsetMask a(static_cast<std::uint32_t>(i + 1));
    objective[i] = basis_sign(a, x.word()) - basis_sign(a, y.word());
  }
  return lp_maximize(objective, constraints_for(norm, x.level()));
}

Rational mk_distance(NormTag norm, const CantorPoint& x, const CantorPoint& y) {
  return mk_distance_solution(norm, x, y).value;
}

namespace {

struct BallMaximum {
  Rational ratio;
  RealVector witness;
};

// max over vertices v of numerator(v) / denominator(v); ties keep the
// lexicographically first vertex.
BallMaximum maximize_over_vertices(const std::vector<RealVector>& vertices, const ConstraintSystem& numerator,
                                   const ConstraintSystem& denominator) {
  BallMaximum best;
  bool have = false;
  for (const auto& v : vertices) {
    const Rational den = denominator.value(v);
    if (sgn(den) == 0) continue;
    Rational r = numerator.value(v) / den;
    if (!have || r > best.ratio) {
      best.ratio = std::move(r);
      best.witness = v;
      have = true;
    }
  }
  return best;
}

RatioWitness witness_for(const RealVector& alpha, const ConstraintSystem& d, const ConstraintSystem& lambda) {
  return {alpha, d.value(alpha), lambda.value(alpha)};
}

}  // namespace

RatioReport equivalence_ratio(unsigned level, const RatioOptions& opts) {
  if (level == 0) throw RangeError("A_0 has no non-constant elements");
  RatioReport report;
  report.level = level;
  report.mode = opts.mode;

  if (opts.mode == RatioMode::exact) {
    if (level > 3) {
      throw UnsupportedError("exact ratio mode enumerates polytope vertices and is limited to n <= 3 "
                             "(coefficient dimension 7); use sample mode or equivalence_ratio_lp");
    }
    const auto d = constraints_for(NormTag::d, level);
    const auto lam = constraints_for(NormTag::lambda, level);
    const auto d_vertices = unit_ball_vertices(d);
    const auto lam_vertices = unit_ball_vertices(lam);
    report.d_vertices = d_vertices.size();
    report.lambda_vertices = lam_vertices.size();
    auto up = maximize_over_vertices(d_vertices, lam, d);
    auto down = maximize_over_vertices(lam_vertices, d, lam);
    report.ratio_up = up.ratio;
    report.ratio_down = down.ratio;
    report.up_witness = witness_for(up.witness, d, lam);
    report.down_witness = witness_for(down.witness, d, lam);
    return report;
  }

  if (opts.samples == 0) throw RangeError("sample mode needs at least one sample");
  const std::size_t dim = coefficient_dimension(level);
  Rng rng(opts.seed);
  std::vector<RealVector> draws(opts.samples);
  for (auto& v : draws) v = random_integer_vector(rng, dim, opts.coeff_bound);

  std::vector<Rational> d_vals(draws.size());
  std::vector<Rational> l_vals(draws.size());
  parallel_for(draws.size(), [&](std::size_t i) {
    const WalshPolynomial f = to_polynomial(draws[i], level);
    d_vals[i] = *lip_d_fast(f).exact();
    l_vals[i] = *lip_lambda(f).exact();
  });

  std::size_t up_at = 0;
  std::size_t down_at = 0;
  Rational up;
  Rational down;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    Rational u = l_vals[i] / d_vals[i];
    Rational w = d_vals[i] / l_vals[i];
    if (i == 0 || u > up) {
      up = std::move(u);
      up_at = i;
    }
    if (i == 0 || w > down) {
      down = std::move(w);
      down_at = i;
    }
  }
  report.samples = draws.size();
  report.ratio_up = up;
  report.ratio_down = down;
  report.up_witness = {draws[up_at], d_vals[up_at], l_vals[up_at]};
  report.down_witness = {draws[down_at], d_vals[down_at], l_vals[down_at]};
  return report;
}

std::pair<Rational, Rational> equivalence_ratio_lp(unsigned level) {
  const auto d = constraints_for(NormTag::d, level);
  const auto lam = constraints_for(NormTag::lambda, level);
  auto max_lp = [](const ConstraintSystem& numerator, const ConstraintSystem& ball) {
    std::vector<Rational> values(numerator.functionals.size());
    parallel_for(values.size(), [&](std::size_t j) {
      const auto& fn = numerator.functionals[j];
      RealVector objective(fn.coeffs.size());
      for (std::size_t i = 0; i < objective.size(); ++i) objective[i] = fn.scale * fn.coeffs[i];
      values[j] = lp_maximize(objective, ball).value;
    });
    return *std::max_element(values.begin(), values.end());
  };
  return {max_lp(lam, d), max_lp(d, lam)};
}

std::vector<Separator> find_separators(unsigned level, const SearchOptions& opts) {
  if (level < 2) throw RangeError("L_d and L^lambda agree on A_1; separators need n >= 2");
  Rng rng(opts.seed);
  std::vector<Separator> out;

  const SubsetMask u0 = SubsetMask::single(0);
  const SubsetMask u1 = SubsetMask::single(1);
  const SubsetMask u01 = u0 ^ u1;
  for (std::size_t s = 0; s < opts.family_samples; ++s) {
    const Rational t = rng.positive_rational(opts.coeff_bound, 8);
    const Rational a0 = 2 * t + rng.positive_rational(opts.coeff_bound, 8);
    WalshPolynomial f(level, {{u0, Scalar(a0)}, {u1, Scalar(t)}, {u01, Scalar(t)}});
    Separator sep{f, lip_d_fast(f), lip_lambda(f), Separator::Origin::family};
    const auto expected_d = SeminormValue::from_rational(std::max(Rational(2 * (a0 + t)), Rational(8 * t)));
    const auto expected_l = SeminormValue::from_rational(2 * (a0 + 2 * t));
    if (sep.d_value != expected_d || sep.lambda_value != expected_l) {
      throw std::logic_error("separating family member disagrees with its closed form");
    }
    out.push_back(std::move(sep));
  }

  const std::size_t dim = coefficient_dimension(level);
  std::vector<RealVector> draws(opts.samples);
  for (auto& v : draws) v = random_integer_vector(rng, dim, opts.coeff_bound);
  std::vector<std::optional<Separator>> hits(draws.size());
  parallel_for(draws.size(), [&](std::size_t i) {
    WalshPolynomial f = to_polynomial(draws[i], level);
    auto dv = lip_d_fast(f);
    auto lv = lip_lambda(f);
    if (dv != lv) hits[i] = Separator{std::move(f), dv, lv, Separator::Origin::random};
  });
  for (auto& h : hits) {
    if (h) out.push_back(std::move(*h));
  }
  return out;
}

}  // namespace cantorlip
