#pragma once

#include <cstdint>
#include <vector>

#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip {

/// Sign of a(x) - a(y) for the basis element a = u_F: 0 when the two values
/// agree, otherwise the sign of a(x) (the difference is +-2).
constexpr int sigma_sign(SubsetMask a, std::uint32_t x, std::uint32_t y) {
  if ((std::popcount(a.bits & (x ^ y)) & 1) == 0) return 0;
  return basis_sign(a, x);
}

/// Basis elements whose values differ at x and y, with the sign of the
/// difference. Always 2^{n-1} members.
struct SigmaSet {
  CantorPoint x;
  CantorPoint y;
  unsigned k = 0;  // first coordinate where x and y differ
  std::vector<SubsetMask> members;
  std::vector<int> signs;  // parallel to members, each +1 or -1
};

SigmaSet sigma_set(const CantorPoint& x, const CantorPoint& y);

/// Basis elements annihilated by E_k: every nonempty F with max F >= k.
/// Always 2^n - 2^k members.
struct RhoSet {
  unsigned k = 0;
  unsigned level = 0;
  std::vector<SubsetMask> members;
};

RhoSet rho_set(unsigned k, unsigned level);

/// Lipschitz seminorm for the Cantor metric through the signed sigma-set sums
/// over every pair of C_n. The unit coefficient is ignored; levels 0 and 1
/// use the A_1 closed form.
SeminormValue lip_d_formula(const WalshPolynomial& f);

/// Same value as lip_d_formula from the table of values of f. For each k the
/// points are grouped by their first k coordinates and split by x_k; only
/// pairs across the split inside a group have first difference k. Real f uses
/// the max/min of each half (O(n 2^n)); complex f scans the pairs of each
/// group.
SeminormValue lip_d_fast(const WalshPolynomial& f);

/// max_k 2^{k+1} ||f - E_k(f)||_inf over k < n, from the algebra operations.
SeminormValue lip_lambda(const WalshPolynomial& f);

/// The conditional-expectation seminorm through the signed rho-set sums
/// max_k max_x 2^{k+1} |sum_{a in rho_k} a(x) alpha_a|.
SeminormValue lip_lambda_formula(const WalshPolynomial& f);

/// f = alpha0 1 + alpha1 u_0: both seminorms equal 2 |alpha1|.
SeminormValue closed_form_a1(const Scalar& alpha0, const Scalar& alpha1);

/// f = alpha0 u_0 + alpha1 u_1 + alpha2 u_0 u_1 (plus any constant).
SeminormValue closed_form_a2_d(const Scalar& alpha0, const Scalar& alpha1, const Scalar& alpha2);
SeminormValue closed_form_a2_lambda(const Scalar& alpha0, const Scalar& alpha1, const Scalar& alpha2);

/// 2^{max F + 1}, the common value of both seminorms on u_F; 0 for the unit.
SeminormValue basis_norm(SubsetMask mask);

}  // namespace cantorlip
