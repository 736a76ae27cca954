#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"

namespace cantorlip {

/// Seedable 64-bit generator (std::mt19937_64). Bounded draws use rejection
/// sampling on the raw 64-bit output so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  bool coin() { return (next() >> 63) != 0; }

  /// p/q with p in [-num_bound, num_bound], q in [1, den_bound].
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);

  /// p/q with p in [1, num_bound], q in [1, den_bound].
  Rational positive_rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::mt19937_64 engine_;
};

struct PolynomialSampling {
  std::int64_t num_bound = 9;
  std::int64_t den_bound = 6;
  bool complex = true;
  /// Probability (percent) that any given basis coefficient is present.
  unsigned density_percent = 70;
  bool include_constant = true;
};

Scalar random_scalar(Rng& rng, const PolynomialSampling& opts);

/// Random element of A_n with rational (optionally complex) coefficients.
WalshPolynomial random_polynomial(Rng& rng, unsigned level, const PolynomialSampling& opts = {});

/// Random polynomial guaranteed to be non-constant (n >= 1).
WalshPolynomial random_nonconstant_polynomial(Rng& rng, unsigned level, const PolynomialSampling& opts = {});

/// Integer vector with entries uniform in [-bound, bound], never all zero.
std::vector<Rational> random_integer_vector(Rng& rng, std::size_t dim, std::int64_t bound);

}  // namespace cantorlip
