#include "expr.hpp"

#include <cctype>
#include <map>

namespace cantorlip::cli {

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error(message + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprAst poly() {
    ExprAst ast;
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = take() == '-';
    ast.terms.push_back(term(negative));
    while (peek() == '+' || peek() == '-') {
      negative = take() == '-';
      ast.terms.push_back(term(negative));
    }
    if (peek() != '\0') fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return ast;
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char take() {
    const char c = peek();
    ++pos_;
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Integer integer() {
    if (!is_digit(peek())) fail("expected an integer");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Rational rat() {
    const Integer num = integer();
    if (peek() != '/') return Rational(num);
    ++pos_;
    const std::size_t at = pos_;
    const Integer den = integer();
    if (sgn(den) == 0) throw ParseError(at, "zero denominator");
    return make_rational(num, den);
  }

  Rational signed_rat() {
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = take() == '-';
    Rational r = rat();
    return negative ? Rational(-r) : r;
  }

  Scalar coeff() {
    if (peek() != '(') return rat();
    ++pos_;
    Scalar z(signed_rat());
    if (peek() == '+' || peek() == '-') {
      const bool negative = take() == '-';
      const Rational im = rat();
      expect('i');
      z.im = negative ? Rational(-im) : im;
    }
    expect(')');
    return z;
  }

  void gen(Term& t) {
    const char c = peek();
    if (c == '1') {
      ++pos_;
      if (pos_ < text_.size() && is_digit(text_[pos_])) fail("a generator is 'u<index>' or '1'");
      return;
    }
    if (c != 'u') fail("expected a generator 'u<index>' or '1'");
    ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected an index after 'u'");
    const Integer index = integer();
    if (index >= kMaxLevel) {
      throw ParseError(at, "index exceeds the level cap " + std::to_string(kMaxLevel - 1));
    }
    t.generators.push_back(static_cast<unsigned>(index.get_ui()));
  }

  void factors(Term& t) {
    gen(t);
    while (peek() == '*') {
      ++pos_;
      gen(t);
    }
  }

  Term term(bool negative) {
    Term t;
    t.coefficient = Scalar(1);
    const char c = peek();
    if (c == 'u') {
      factors(t);
    } else if (c == '(' || is_digit(c)) {
      t.coefficient = coeff();
      if (peek() == '*') {
        ++pos_;
        factors(t);
      }
    } else {
      fail(c == '\0' ? "unexpected end of expression" : "expected a term");
    }
    if (negative) t.coefficient = -t.coefficient;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string generators(SubsetMask mask) {
  std::string out;
  for (unsigned j = 0; j < kMaxLevel; ++j) {
    if (!mask.contains(j)) continue;
    if (!out.empty()) out += '*';
    out += 'u' + std::to_string(j);
  }
  return out;
}

}  // namespace

ExprAst parse_expr(std::string_view text) { return Parser(text).poly(); }

WalshPolynomial normalize(const ExprAst& ast) {
  std::map<SubsetMask, Scalar> acc;
  for (const auto& t : ast.terms) {
    SubsetMask mask;
    for (unsigned g : t.generators) mask = mask ^ SubsetMask::single(g);
    acc[mask] += t.coefficient;
  }
  WalshPolynomial::CoeffMap coeffs;
  unsigned level = 0;
  for (auto& [mask, c] : acc) {
    if (c.is_zero()) continue;
    level = std::max(level, mask.required_level());
    coeffs.emplace(mask, std::move(c));
  }
  return {level, std::move(coeffs)};
}

std::string format_polynomial(const WalshPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : f.coeffs()) {
    const std::string gens = generators(mask);
    std::string body;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re) < 0;
      const Rational m = abs(c.re);
      if (mask.empty()) {
        body = to_string(m);
      } else {
        body = m == 1 ? gens : to_string(m) + "*" + gens;
      }
    } else {
      body = "(" + to_string(c.re) + (sgn(c.im) < 0 ? "-" : "+") + to_string(Rational(abs(c.im))) + "i)";
      if (!mask.empty()) body += "*" + gens;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

CantorPoint parse_point(std::string_view text) {
  if (text.empty()) throw ParseError(0, "empty point literal");
  if (text.size() > kMaxLevel) throw ParseError(kMaxLevel, "point has more than " + std::to_string(kMaxLevel) + " coordinates");
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw ParseError(i, "point coordinates must be 0 or 1");
  }
  return CantorPoint::from_bits(text);
}

}  // namespace cantorlip::cli
