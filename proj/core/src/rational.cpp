#include "cantorlip/rational.hpp"

#include <algorithm>
#include <functional>

#include "cantorlip/errors.hpp"

namespace cantorlip {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw RangeError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2(int e) {
  Integer p;
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -static_cast<long>(e) : e);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, mag);
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw RangeError("empty rational literal");
  const auto slash = s.find('/');
  auto digits_ok = [](std::string_view t, bool allow_sign) {
    if (!t.empty() && allow_sign && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) {
    throw RangeError("malformed rational literal '" + s + "'");
  }
  Integer n(num.front() == '+' ? num.substr(1) : num, 10);
  Integer d(den, 10);
  return make_rational(n, d);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const Scalar& z) {
  if (z.is_real()) return to_string(z.re);
  std::string out = to_string(z.re);
  out += sgn(z.im) < 0 ? "-" : "+";
  out += to_string(Rational(abs(z.im)));
  out += "i";
  return out;
}

SeminormValue SeminormValue::from_squared(Rational squared) {
  if (sgn(squared) < 0) throw RangeError("negative squared seminorm value");
  return SeminormValue(std::move(squared));
}

SeminormValue SeminormValue::scaled_pow2(int e) const { return SeminormValue(squared_ * pow2(2 * e)); }

std::optional<Rational> SeminormValue::exact() const {
  const Integer& num = squared_.get_num();
  const Integer& den = squared_.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer rn;
  Integer rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rational(rn, rd);
}

std::string SeminormValue::decimal(unsigned digits) const { return sqrt_decimal(squared_, digits); }

namespace {

Integer pow10(unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

// floor(q * 10^e) for q >= 0.
Integer floor_scaled(const Rational& q, long e) {
  Integer num = q.get_num();
  Integer den = q.get_den();
  if (e >= 0) {
    num *= pow10(static_cast<unsigned long>(e));
  } else {
    den *= pow10(static_cast<unsigned long>(-e));
  }
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::string place_point(const Integer& n, long e) {
  std::string s = n.get_str();
  if (e <= 0) return s + std::string(static_cast<std::size_t>(-e), '0');
  const auto len = static_cast<long>(s.size());
  if (len > e) {
    s.insert(s.end() - e, '.');
  } else {
    s = "0." + std::string(static_cast<std::size_t>(e - len), '0') + s;
  }
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

// Renders v >= 0 given floor(v * 10^e) for any e. `log10_guess` is a rough
// estimate of log10(v).
std::string round_significant(const std::function<Integer(long)>& floor_at, long log10_guess,
                              unsigned digits) {
  if (digits == 0) digits = 1;
  const Integer lo = pow10(digits - 1);
  const Integer hi = pow10(digits);
  long e = static_cast<long>(digits) - 1 - log10_guess;
  Integer t = floor_at(e);
  for (int guard = 0; guard < 64; ++guard) {
    if (t < lo) {
      ++e;
    } else if (t >= hi) {
      --e;
    } else {
      break;
    }
    t = floor_at(e);
  }
  Integer n = floor_at(e + 1);
  n += 5;
  n /= 10;
  if (n >= hi) {
    n /= 10;
    --e;
  }
  return place_point(n, e);
}

long log10_estimate(const Rational& q) {
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 10)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 10));
}

}  // namespace

std::string sqrt_decimal(const Rational& q, unsigned digits) {
  if (sgn(q) < 0) throw RangeError("square root of a negative rational");
  if (sgn(q) == 0) return "0";
  auto floor_at = [&q](long e) {
    Integer scaled = floor_scaled(q, 2 * e);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return root;
  };
  return round_significant(floor_at, log10_estimate(q) / 2, digits);
}

std::string rational_decimal(const Rational& q, unsigned digits) {
  if (sgn(q) == 0) return "0";
  const Rational mag = abs(q);
  auto floor_at = [&mag](long e) { return floor_scaled(mag, e); };
  std::string body = round_significant(floor_at, log10_estimate(mag), digits);
  return sgn(q) < 0 ? "-" + body : body;
}

}  // namespace cantorlip
