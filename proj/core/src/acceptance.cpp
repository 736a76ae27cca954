#include "cantorlip/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <sstream>

#include "cantorlip/lipnorms.hpp"
#include "cantorlip/optimization.hpp"
#include "cantorlip/oracle.hpp"
#include "cantorlip/parallel.hpp"
#include "cantorlip/radicals.hpp"
#include "cantorlip/random.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip {

namespace {

// Criterion 1 must finish inside this wall-clock budget.
constexpr double kBasisBudgetSeconds = 30.0;
constexpr std::size_t kFamilyTriples = 500;
constexpr std::size_t kA2Triples = 1000;
constexpr std::size_t kPerLevelPolynomials = 200;
constexpr std::size_t kExpectationInstances = 100;
constexpr std::size_t kLeibnizPairs = 200;
constexpr std::size_t kAxiomInstances = 200;
constexpr std::size_t kRatioSamples = 10000;

struct Outcome {
  bool passed = false;
  std::string detail;
};

// Counts failing indices of a per-case predicate evaluated in parallel.
std::size_t count_failures(std::size_t count, const std::function<bool(std::size_t)>& ok) {
  std::vector<char> bad(count, 0);
  parallel_for(count, [&](std::size_t i) { bad[i] = ok(i) ? 0 : 1; });
  return static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
}

SeminormValue value_of(const Rational& v) { return SeminormValue::from_rational(v); }

WalshPolynomial a2(const Scalar& c, const Scalar& a0, const Scalar& a1, const Scalar& a2) {
  WalshPolynomial::CoeffMap m;
  auto put = [&](std::uint32_t mask, const Scalar& s) {
    if (!s.is_zero()) m.emplace(SubsetMask(mask), s);
  };
  put(0, c);
  put(1, a0);
  put(2, a1);
  put(3, a2);
  return WalshPolynomial(2, std::move(m));
}

struct Triple {
  Scalar constant;
  Scalar a0;
  Scalar a1;
  Scalar a2;
};

std::vector<Triple> a2_triples(std::uint64_t seed) {
  Rng rng(seed);
  PolynomialSampling s;
  std::vector<Triple> out;
  for (std::size_t i = 0; i < kA2Triples; ++i) {
    Triple t;
    t.constant = random_scalar(rng, s);
    t.a0 = random_scalar(rng, s);
    t.a1 = random_scalar(rng, s);
    t.a2 = random_scalar(rng, s);
    out.push_back(std::move(t));
  }
  return out;
}

Outcome basis_agreement(const AcceptanceOptions& opts) {
  const unsigned width = std::min(10U, opts.max_n + 2);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t cases = (std::size_t{1} << width) - 1;
  const auto failures = count_failures(cases, [](std::size_t i) {
    const SubsetMask mask(static_cast<std::uint32_t>(i + 1));
    const auto f = WalshPolynomial::basis(mask, mask.required_level());
    const auto expected = SeminormValue::from_squared(pow2(2 * static_cast<int>(mask.max_element() + 1)));
    return lip_d_formula(f) == expected && lip_lambda(f) == expected && oracle_lip_d(f) == expected &&
           oracle_lip_lambda(f) == expected && basis_norm(mask) == expected;
  });
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << cases << " masks over {0.." << width - 1 << "}, " << failures << " mismatches, " << seconds << " s (budget "
     << kBasisBudgetSeconds << " s)";
  return {failures == 0 && seconds < kBasisBudgetSeconds, os.str()};
}

Outcome separation(const AcceptanceOptions&) {
  const Scalar zero;
  const auto f = a2(zero, 4, 1, 1);
  const auto ten = value_of(10);
  const auto twelve = value_of(12);
  const bool d_ok = closed_form_a2_d(4, 1, 1) == ten && lip_d_formula(f) == ten && lip_d_fast(f) == ten &&
                    oracle_lip_d(f) == ten;
  const bool l_ok = closed_form_a2_lambda(4, 1, 1) == twelve && lip_lambda(f) == twelve &&
                    lip_lambda_formula(f) == twelve && oracle_lip_lambda(f) == twelve;
  std::ostringstream os;
  os << "L_d = " << lip_d_formula(f).decimal() << ", L_lambda = " << lip_lambda(f).decimal()
     << " (closed form, formula, fast, oracle)";
  return {d_ok && l_ok, os.str()};
}

Outcome parametric_family(const AcceptanceOptions& opts) {
  Rng rng(opts.seed + 3);
  struct Case {
    Rational a0;
    Rational t;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < kFamilyTriples; ++i) {
    Rational t = rng.positive_rational(9, 6);
    Rational a0 = 2 * t + rng.positive_rational(9, 6);
    cases.push_back({std::move(a0), std::move(t)});
  }
  const auto failures = count_failures(cases.size(), [&](std::size_t i) {
    const auto& [a0, t] = cases[i];
    const auto f = a2(Scalar(), a0, t, t);
    const Rational d = std::max(Rational(2 * (a0 + t)), Rational(8 * t));
    const Rational l = 2 * (a0 + 2 * t);
    return lip_d_formula(f) == value_of(d) && lip_d_fast(f) == value_of(d) && lip_lambda(f) == value_of(l) &&
           lip_lambda_formula(f) == value_of(l);
  });
  std::ostringstream os;
  os << cases.size() << " triples with a0 > a1 + a2, a1 = a2 > 0; " << failures << " mismatches";
  return {failures == 0, os.str()};
}

Outcome a2_closed_forms(const AcceptanceOptions& opts) {
  const auto triples = a2_triples(opts.seed + 4);
  const auto failures = count_failures(triples.size(), [&](std::size_t i) {
    const auto& t = triples[i];
    const auto f = a2(t.constant, t.a0, t.a1, t.a2);
    const auto d = closed_form_a2_d(t.a0, t.a1, t.a2);
    const auto l = closed_form_a2_lambda(t.a0, t.a1, t.a2);
    return d == lip_d_formula(f) && d == oracle_lip_d(f) && l == lip_lambda_formula(f) && l == oracle_lip_lambda(f);
  });
  std::ostringstream os;
  os << triples.size() << " complex rational triples, " << failures << " mismatches";
  return {failures == 0, os.str()};
}

Outcome a2_sandwich(const AcceptanceOptions& opts) {
  const auto triples = a2_triples(opts.seed + 4);
  Rational worst;
  std::size_t failures = 0;
  for (const auto& t : triples) {
    const Rational d = closed_form_a2_d(t.a0, t.a1, t.a2).squared();
    const Rational l = closed_form_a2_lambda(t.a0, t.a1, t.a2).squared();
    if (!(d <= l && l <= 4 * d)) ++failures;
    if (sgn(d) != 0 && l / d > worst) worst = l / d;
  }
  std::ostringstream os;
  os << triples.size() << " triples, " << failures << " violations, largest v_lambda^2 / v_d^2 = " << to_string(worst);
  return {failures == 0, os.str()};
}

Outcome path_equivalence(const AcceptanceOptions& opts) {
  const unsigned top = std::min(8U, opts.max_n);
  std::size_t failures = 0;
  std::size_t total = 0;
  for (unsigned n = 2; n <= top; ++n) {
    Rng rng(opts.seed + 600 + n);
    std::vector<WalshPolynomial> polys;
    for (std::size_t i = 0; i < kPerLevelPolynomials; ++i) polys.push_back(random_polynomial(rng, n));
    total += polys.size();
    failures += count_failures(polys.size(), [&](std::size_t i) {
      const auto& f = polys[i];
      const auto d = lip_d_formula(f);
      const auto l = lip_lambda(f);
      return d == lip_d_fast(f) && d == oracle_lip_d(f) && l == lip_lambda_formula(f) && l == oracle_lip_lambda(f);
    });
  }
  std::ostringstream os;
  os << total << " polynomials over n = 2.." << top << ", " << failures << " mismatches";
  return {failures == 0, os.str()};
}

Outcome expectations(const AcceptanceOptions& opts) {
  std::size_t failures = 0;
  for (unsigned j = 0; j < 10; ++j) {
    if (!conditional_expectation(WalshPolynomial::basis(SubsetMask::single(j), j + 1), 0).is_zero()) ++failures;
  }
  const unsigned width = std::min(8U, opts.max_n);
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << width); ++bits) {
    const SubsetMask mask(bits);
    const auto u = WalshPolynomial::basis(mask, width);
    for (unsigned k = 0; k <= width; ++k) {
      const bool kept = mask.empty() || mask.max_element() < k;
      const auto e = conditional_expectation(u, k);
      if (kept ? !(e == u) : !e.is_zero()) ++failures;
    }
  }
  Rng rng(opts.seed + 7);
  for (std::size_t i = 0; i < kExpectationInstances; ++i) {
    const auto n = static_cast<unsigned>(rng.uniform(1, 6));
    const auto k = static_cast<unsigned>(rng.uniform(0, n));
    const auto f = random_polynomial(rng, n);
    const auto a = random_polynomial(rng, k).lifted(n);
    const auto c = random_polynomial(rng, k).lifted(n);
    const auto e = conditional_expectation(f, k);
    const bool ok = conditional_expectation(e, k) == e && sup_norm(e) <= sup_norm(f) &&
                    conditional_expectation(a * f * c, k) == a * e * c && oracle_conditional_expectation(f, k) == e;
    if (!ok) ++failures;
  }
  std::ostringstream os;
  os << "E_0(u_j) for j < 10, E_k(u_F) for F in {0.." << width - 1 << "}, " << kExpectationInstances
     << " idempotence/contraction/bimodule instances; " << failures << " failures";
  return {failures == 0, os.str()};
}

Outcome cardinalities(const AcceptanceOptions& opts) {
  const unsigned top = std::min(8U, opts.max_n);
  std::size_t failures = 0;
  std::size_t pairs = 0;
  for (unsigned n = 2; n <= top; ++n) {
    const std::uint32_t size = std::uint32_t{1} << n;
    const std::size_t expected = std::size_t{1} << (n - 1);
    std::vector<std::size_t> bad(size, 0);
    parallel_for(size, [&](std::size_t xi) {
      const auto x = static_cast<std::uint32_t>(xi);
      for (std::uint32_t y = 0; y < size; ++y) {
        if (x == y) continue;
        const auto s = sigma_set(CantorPoint(n, x), CantorPoint(n, y));
        if (s.members.size() != expected || s.signs.size() != expected) ++bad[xi];
      }
    });
    for (auto b : bad) failures += b;
    pairs += std::size_t{size} * (size - 1);
    for (unsigned k = 0; k < n; ++k) {
      if (rho_set(k, n).members.size() != (std::size_t{1} << n) - (std::size_t{1} << k)) ++failures;
    }
  }
  std::ostringstream os;
  os << pairs << " ordered pairs and every rho_k over n = 2.." << top << ", " << failures << " wrong counts";
  return {failures == 0, os.str()};
}

Outcome mk_recovery(const AcceptanceOptions& opts) {
  const unsigned top = std::min(4U, opts.max_n);
  std::size_t failures = 0;
  std::size_t pairs = 0;
  for (unsigned n = 2; n <= top; ++n) {
    const std::uint32_t size = std::uint32_t{1} << n;
    std::vector<char> bad(std::size_t{size} * size, 0);
    parallel_for(bad.size(), [&](std::size_t i) {
      const auto x = static_cast<std::uint32_t>(i / size);
      const auto y = static_cast<std::uint32_t>(i % size);
      if (x == y) return;
      const CantorPoint px(n, x);
      const CantorPoint py(n, y);
      bad[i] = value_of(mk_distance(NormTag::d, px, py)) == cantor_distance(px, py) ? 0 : 1;
    });
    failures += static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
    pairs += std::size_t{size} * (size - 1);
  }
  std::ostringstream os;
  os << pairs << " ordered pairs over n = 2.." << top << ", " << failures << " mismatches";
  return {failures == 0, os.str()};
}

Outcome mk_lambda_sandwich(const AcceptanceOptions&) {
  std::size_t failures = 0;
  std::ostringstream os;
  os << "n = 2:";
  for (std::uint32_t x = 0; x < 4; ++x) {
    for (std::uint32_t y = 0; y < 4; ++y) {
      if (x == y) continue;
      const CantorPoint px(2, x);
      const CantorPoint py(2, y);
      const Rational mk = mk_distance(NormTag::lambda, px, py);
      const auto d = cantor_distance(px, py);
      if (!(value_of(2 * mk) >= d && value_of(mk) <= d)) ++failures;
      os << ' ' << px.to_bits() << '/' << py.to_bits() << '=' << to_string(mk);
    }
  }
  os << "; " << failures << " outside [d/2, d]";
  return {failures == 0, os.str()};
}

bool same_report(const RatioReport& a, const RatioReport& b) {
  return a.ratio_up == b.ratio_up && a.ratio_down == b.ratio_down && a.up_witness.alpha == b.up_witness.alpha &&
         a.down_witness.alpha == b.down_witness.alpha && a.samples == b.samples;
}

Outcome equivalence_ratios(const AcceptanceOptions& opts) {
  const auto exact = equivalence_ratio(2, {});
  const auto& w = exact.up_witness;
  const auto witness = to_polynomial(w.alpha, 2);
  const bool witness_ok = !w.alpha.empty() && value_of(w.d_value) == lip_d_formula(witness) &&
                          value_of(w.lambda_value) == lip_lambda_formula(witness) && sgn(w.d_value) > 0 &&
                          w.lambda_value / w.d_value == exact.ratio_up;
  const bool exact_ok = exact.ratio_down == 1 && exact.ratio_up >= Rational(6, 5) && exact.ratio_up <= 2;

  RatioOptions sample;
  sample.mode = RatioMode::sample;
  sample.samples = kRatioSamples;
  sample.seed = opts.seed;
  const auto first = equivalence_ratio(3, sample);
  const auto second = equivalence_ratio(3, sample);
  const bool sample_ok = same_report(first, second) && first.ratio_up >= 1 && first.ratio_up <= 2 &&
                         first.ratio_down >= Rational(1, 2) && first.ratio_down <= 1;

  std::ostringstream os;
  os << "exact n = 2: up = " << to_string(exact.ratio_up) << ", down = " << to_string(exact.ratio_down)
     << ", witness (";
  for (std::size_t i = 0; i < w.alpha.size(); ++i) os << (i ? "," : "") << to_string(w.alpha[i]);
  os << "); sample n = 3 (" << first.samples << " samples, seed " << sample.seed
     << "): up >= " << to_string(first.ratio_up) << ", down >= " << to_string(first.ratio_down)
     << (same_report(first, second) ? ", rerun identical" : ", rerun differs");
  return {exact_ok && witness_ok && sample_ok, os.str()};
}

Outcome quasi_leibniz(const AcceptanceOptions& opts) {
  const unsigned top = std::min(5U, opts.max_n);
  std::size_t failures = 0;
  std::size_t total = 0;
  for (unsigned n = 2; n <= top; ++n) {
    Rng rng(opts.seed + 1200 + n);
    std::vector<std::pair<WalshPolynomial, WalshPolynomial>> pairs;
    for (std::size_t i = 0; i < kLeibnizPairs; ++i) {
      auto f = random_polynomial(rng, n);
      auto g = random_polynomial(rng, n);
      pairs.emplace_back(std::move(f), std::move(g));
    }
    total += pairs.size();
    failures += count_failures(pairs.size(), [&](std::size_t i) {
      const auto r = leibniz_report(pairs[i].first, pairs[i].second);
      return r.d_holds && r.lambda_holds;
    });
  }
  std::ostringstream os;
  os << total << " pairs over n = 2.." << top << ", " << failures << " violations";
  return {failures == 0, os.str()};
}

Outcome seminorm_axioms(const AcceptanceOptions& opts) {
  using Norm = SeminormValue (*)(const WalshPolynomial&);
  const std::pair<const char*, Norm> norms[] = {{"L_d", &lip_d_formula}, {"L_lambda", &lip_lambda}};
  std::size_t failures = 0;
  std::ostringstream os;
  for (const auto& [name, norm] : norms) {
    Rng rng(opts.seed + 1300 + (norm == &lip_lambda ? 1 : 0));
    std::size_t local = 0;
    for (std::size_t i = 0; i < kAxiomInstances; ++i) {
      const auto n = static_cast<unsigned>(rng.uniform(1, 6));
      const auto f = random_polynomial(rng, n);
      const auto g = random_polynomial(rng, n);
      const Scalar c = random_scalar(rng, {});
      const Scalar k = random_scalar(rng, {});
      const auto lf = norm(f);
      const bool homogeneous = norm(f.scaled(c)).squared() == c.abs_squared() * lf.squared();
      const bool triangle = less_or_equal(norm(f + g), RadicalSum{1, {lf.squared(), norm(g).squared()}});
      const bool adjoint = norm(f.conjugate()) == lf;
      const bool constant = norm(WalshPolynomial::constant(k, n)).is_zero();
      if (!(homogeneous && triangle && adjoint && constant)) ++local;
    }
    failures += local;
    os << name << ": " << kAxiomInstances << " instances, " << local << " failures; ";
  }
  std::string detail = os.str();
  detail.resize(detail.size() - 2);
  return {failures == 0, detail};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)(const AcceptanceOptions&);
};

constexpr Criterion kCriteria[] = {
    {1, "basis agreement", &basis_agreement},
    {2, "separation example", &separation},
    {3, "parametric family", &parametric_family},
    {4, "A2 closed forms", &a2_closed_forms},
    {5, "A2 sandwich", &a2_sandwich},
    {6, "formula/oracle/fast equivalence", &path_equivalence},
    {7, "conditional expectations", &expectations},
    {8, "sigma and rho cardinalities", &cardinalities},
    {9, "MK recovery of the Cantor metric", &mk_recovery},
    {10, "MK sandwich for L_lambda", &mk_lambda_sandwich},
    {11, "equivalence ratio", &equivalence_ratios},
    {12, "quasi-Leibniz", &quasi_leibniz},
    {13, "seminorm axioms", &seminorm_axioms},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto o = c.run(opts);
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cantorlip
