#include "cantorlip/random.hpp"

#include <limits>

#include "cantorlip/errors.hpp"

namespace cantorlip {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw RangeError("empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % range);
  std::uint64_t draw = next();
  while (draw >= limit) draw = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
}

Rational Rng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  const std::int64_t p = uniform(-num_bound, num_bound);
  const std::int64_t q = uniform(1, den_bound);
  return make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

Rational Rng::positive_rational(std::int64_t num_bound, std::int64_t den_bound) {
  const std::int64_t p = uniform(1, num_bound);
  const std::int64_t q = uniform(1, den_bound);
  return make_rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

Scalar random_scalar(Rng& rng, const PolynomialSampling& opts) {
  Scalar z(rng.rational(opts.num_bound, opts.den_bound));
  if (opts.complex && rng.coin()) z.im = rng.rational(opts.num_bound, opts.den_bound);
  return z;
}

WalshPolynomial random_polynomial(Rng& rng, unsigned level, const PolynomialSampling& opts) {
  WalshPolynomial::CoeffMap coeffs;
  const std::uint32_t masks = std::uint32_t{1} << level;
  for (std::uint32_t a = opts.include_constant ? 0 : 1; a < masks; ++a) {
    if (rng.uniform(1, 100) > static_cast<std::int64_t>(opts.density_percent)) continue;
    coeffs.emplace(SubsetMask(a), random_scalar(rng, opts));
  }
  return {level, std::move(coeffs)};
}

WalshPolynomial random_nonconstant_polynomial(Rng& rng, unsigned level, const PolynomialSampling& opts) {
  if (level == 0) throw RangeError("A_0 has no non-constant elements");
  for (;;) {
    WalshPolynomial f = random_polynomial(rng, level, opts);
    if (!f.is_constant()) return f;
  }
}

std::vector<Rational> random_integer_vector(Rng& rng, std::size_t dim, std::int64_t bound) {
  if (dim == 0 || bound <= 0) throw RangeError("cannot draw a nonzero vector");
  std::vector<Rational> v(dim);
  for (;;) {
    bool nonzero = false;
    for (auto& e : v) {
      e = Rational(static_cast<long>(rng.uniform(-bound, bound)));
      nonzero = nonzero || sgn(e) != 0;
    }
    if (nonzero) return v;
  }
}

}  // namespace cantorlip
