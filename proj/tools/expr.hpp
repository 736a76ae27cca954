#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cantorlip/errors.hpp"
#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip::cli {

/// Malformed expression or point literal. `position` is a 0-based offset
/// into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// coefficient * u_{g_0} * u_{g_1} * ...; the unit generator '1' contributes
/// nothing to `generators`.
struct Term {
  Scalar coefficient;
  std::vector<unsigned> generators;
};

struct ExprAst {
  std::vector<Term> terms;
};

/// poly    := ['+'|'-'] term (('+'|'-') term)*
/// term    := [coeff '*'] factors | coeff
/// factors := gen ('*' gen)*          gen := 'u' INT | '1'
/// coeff   := rat | '(' srat [('+'|'-') rat 'i'] ')'
/// rat     := INT ['/' POSINT]        srat := ['+'|'-'] rat
/// Whitespace is ignored. Indices must stay below kMaxLevel.
ExprAst parse_expr(std::string_view text);

/// Combines like terms with u_j^2 = 1. The level is the smallest one holding
/// every surviving mask.
WalshPolynomial normalize(const ExprAst& ast);

inline WalshPolynomial parse_polynomial(std::string_view text) { return normalize(parse_expr(text)); }

/// Canonical text: unit term first, then masks in increasing order, e.g.
/// "4*u0 + u1 + u0*u1", "(1/2+1/3i)*u2", "0". Parses back to the same
/// polynomial.
std::string format_polynomial(const WalshPolynomial& f);

/// Bit-string point literal, leftmost character is x_0.
CantorPoint parse_point(std::string_view text);

}  // namespace cantorlip::cli
