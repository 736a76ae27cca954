#pragma once

#include <vector>

#include "cantorlip/radicals.hpp"
#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip {

/// Brute-force reference implementations. Nothing here reuses the
/// evaluation, E_k or seminorm code of the algebra modules.
inline constexpr unsigned kOracleMaxLevel = 10;

/// Values of f on C_n, index = point word. Length 2^n.
struct PointTable {
  unsigned level = 0;
  std::vector<Scalar> values;
};

/// Per-point sign-product evaluation. LevelError above kOracleMaxLevel.
PointTable point_table(const WalshPolynomial& f);

/// Exact max over ordered pairs x != y of |f(x) - f(y)| / d(x, y).
SeminormValue oracle_lip_d(const WalshPolynomial& f);

/// Uniform average of f over C_n.
Scalar oracle_lambda(const WalshPolynomial& f);

/// sum over basis elements a of A_k of lambda(f a) a, with lambda the uniform
/// average. Result lives at f.level(); k beyond the level acts as k = level.
WalshPolynomial oracle_conditional_expectation(const WalshPolynomial& f, unsigned k);

/// max over k < n of 2^{k+1} max_x |f(x) - E_k(f)(x)|, E_k as above.
SeminormValue oracle_lip_lambda(const WalshPolynomial& f);

/// max_x |f(x)| by table scan.
SeminormValue oracle_sup_norm(const WalshPolynomial& f);

/// Both sides of L(fg) <= C (L(f) |g| + |f| L(g)). The right sides are
/// stored without C; d_holds uses C = 1 and lambda_holds uses C = 2.
struct LeibnizReport {
  SeminormValue lhs_d;
  RadicalSum rhs_d;
  SeminormValue lhs_lambda;
  RadicalSum rhs_lambda;
  bool d_holds = false;
  bool lambda_holds = false;
};

/// f and g must share a level (LevelError otherwise).
LeibnizReport leibniz_report(const WalshPolynomial& f, const WalshPolynomial& g);

}  // namespace cantorlip
