#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip {

enum class NormTag { d, lambda };

std::string_view to_string(NormTag tag);

/// Real coefficient vector of a non-constant element of A_n: entry i is the
/// coefficient of u_F with F = i + 1 (the unit is left out, both seminorms
/// ignore it). Dimension 2^n - 1.
using RealVector = std::vector<Rational>;

std::size_t coefficient_dimension(unsigned level);
WalshPolynomial to_polynomial(const RealVector& alpha, unsigned level);
/// Throws DimensionError if f has a non-real coefficient.
RealVector real_coefficients(const WalshPolynomial& f);

/// alpha -> scale * <coeffs, alpha>. The seminorm is the max of the absolute
/// values of its functionals.
struct LinearFunctional {
  std::vector<Rational> coeffs;
  Rational scale;

  Rational apply(const RealVector& alpha) const;
};

/// Finite family of functionals with L(alpha) = max_i |functional_i(alpha)|
/// on real coefficient vectors. Functionals are deduplicated up to sign.
struct ConstraintSystem {
  unsigned level = 0;
  NormTag norm = NormTag::d;
  std::vector<LinearFunctional> functionals;

  std::size_t dimension() const { return coefficient_dimension(level); }
  Rational value(const RealVector& alpha) const;
};

/// One functional per unordered pair of C_n for d (the signed sigma sums),
/// one per (k, x) for lambda (the signed rho sums). Requires n >= 1.
ConstraintSystem constraints_for(NormTag norm, unsigned level);

enum class LpStatus { optimal, unbounded, infeasible };

std::string_view to_string(LpStatus status);

struct LPSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  RealVector optimizer;
  std::size_t pivots = 0;
};

/// Exact maximum of <objective, alpha> over {alpha : |functional_i(alpha)| <= 1}.
/// Solved as the dual standard-form program with a two-phase rational
/// simplex under Bland's rule; the returned optimizer is the primal vertex
/// read off the optimal dual basis and is checked against every constraint.
LPSolution lp_maximize(const RealVector& objective, const ConstraintSystem& system);

struct DiracState {
  CantorPoint point;
  Scalar operator()(const WalshPolynomial& f) const { return evaluate(f, point); }
};

/// Monge-Kantorovich distance between the Dirac states at x and y, the
/// supremum taken over real elements of A_n in the unit ball of the chosen
/// seminorm.
LPSolution mk_distance_solution(NormTag norm, const CantorPoint& x, const CantorPoint& y);
Rational mk_distance(NormTag norm, const CantorPoint& x, const CantorPoint& y);

/// Every vertex of {alpha : |functional_i(alpha)| <= 1}, lexicographically
/// sorted. Exhaustive over d-subsets of the functionals with integer
/// fraction-free elimination; dimension at most 7.
std::vector<RealVector> unit_ball_vertices(const ConstraintSystem& system);

enum class RatioMode { exact, sample };

struct RatioOptions {
  RatioMode mode = RatioMode::exact;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::int64_t coeff_bound = 16;
};

struct RatioWitness {
  RealVector alpha;
  Rational d_value;
  Rational lambda_value;
};

/// ratio_up = max L^lambda / L_d and ratio_down = max L_d / L^lambda over real
/// non-constant elements of A_n. Exact mode maximises the numerator over the
/// vertices of the denominator's unit ball (n <= 3); sample mode reports the
/// best ratio over random integer vectors, which is a lower bound.
struct RatioReport {
  unsigned level = 0;
  RatioMode mode = RatioMode::exact;
  Rational ratio_up;
  Rational ratio_down;
  RatioWitness up_witness;
  RatioWitness down_witness;
  std::size_t d_vertices = 0;
  std::size_t lambda_vertices = 0;
  std::size_t samples = 0;
};

RatioReport equivalence_ratio(unsigned level, const RatioOptions& opts);

/// Same two maxima by linear programming: the numerator is a max of
/// absolute linear forms, so its maximum over the denominator ball is the
/// largest LP optimum over those forms.
std::pair<Rational, Rational> equivalence_ratio_lp(unsigned level);

struct Separator {
  enum class Origin { family, random };
  WalshPolynomial polynomial;
  SeminormValue d_value;
  SeminormValue lambda_value;
  Origin origin = Origin::random;
};

struct SearchOptions {
  std::size_t samples = 1000;
  std::size_t family_samples = 8;
  std::uint64_t seed = 1;
  std::int64_t coeff_bound = 16;
};

/// Elements of A_n on which L_d and L^lambda differ: members of the family
/// alpha0 u_0 + t u_1 + t u_0 u_1 with alpha0 > 2t > 0 (checked against
/// max{2(alpha0 + t), 8t} and 2(alpha0 + 2t)), then random integer vectors.
/// Requires n >= 2.
std::vector<Separator> find_separators(unsigned level, const SearchOptions& opts);

}  // namespace cantorlip
