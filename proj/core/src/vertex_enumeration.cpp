#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "cantorlip/errors.hpp"
#include "cantorlip/optimization.hpp"
#include "cantorlip/parallel.hpp"

namespace cantorlip {

namespace {

constexpr std::size_t kMaxVertexDimension = 7;

using Row = std::vector<std::int64_t>;
// Numerators followed by the positive common denominator, gcd-reduced.
using VertexKey = std::vector<std::int64_t>;

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw UnsupportedError("vertex enumeration overflowed 64-bit arithmetic");
  return static_cast<std::int64_t>(v);
}

std::vector<Row> integer_rows(const ConstraintSystem& system) {
  std::vector<Row> rows;
  for (const auto& fn : system.functionals) {
    Row r;
    for (const auto& c : fn.coeffs) {
      const Rational v = fn.scale * c;
      if (v.get_den() != 1 || !v.get_num().fits_slong_p()) {
        throw UnsupportedError("vertex enumeration needs small integer functionals");
      }
      r.push_back(v.get_num().get_si());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// Fraction-free Gauss-Jordan on [M | I]. On success `pivot` holds the common
// diagonal value p and `adj` holds p * M^{-1}, both integral.
bool fraction_free_inverse(std::vector<Row> m, std::vector<Row>& adj, std::int64_t& pivot) {
  const std::size_t n = m.size();
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  __int128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return false;
    if (p != k) std::swap(a[p], a[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  // Rows finished early carry an older pivot; bring them to the final one.
  pivot = narrow(prev);
  adj.assign(n, Row(n));
  for (std::size_t i = 0; i < n; ++i) {
    const __int128 diag = a[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      const __int128 v = a[i][n + j] * prev;
      if (v % diag != 0) throw std::logic_error("fraction-free inverse produced a non-integral entry");
      adj[i][j] = narrow(v / diag);
    }
  }
  return true;
}

VertexKey normalize(const std::vector<std::int64_t>& num, std::int64_t den) {
  VertexKey key(num);
  key.push_back(den);
  if (den < 0) {
    for (auto& v : key) v = -v;
  }
  std::int64_t g = 0;
  for (auto v : key) g = std::gcd(g, v);
  if (g > 1) {
    for (auto& v : key) v /= g;
  }
  return key;
}

// Explores every d-subset whose first member is `first`, recording the
// feasible vertices of {|r . alpha| <= 1}.
void explore(const std::vector<Row>& rows, std::size_t first, std::set<VertexKey>& found) {
  const std::size_t m = rows.size();
  const std::size_t d = rows.front().size();
  if (first + d > m) return;

  std::vector<std::size_t> pick(d);
  pick[0] = first;
  for (std::size_t i = 1; i < d; ++i) pick[i] = first + i;

  std::vector<Row> sub(d);
  std::vector<Row> adj;
  std::vector<char> chosen(m);
  std::vector<Row> w;  // w[j] = rows[j] . adj for the rows outside the subset
  std::vector<std::int64_t> num(d);
  std::vector<std::int64_t> t;
  std::vector<int> signs(d);
  std::int64_t pivot = 0;

  for (;;) {
    for (std::size_t i = 0; i < d; ++i) sub[i] = rows[pick[i]];
    if (fraction_free_inverse(sub, adj, pivot)) {
      std::fill(chosen.begin(), chosen.end(), 0);
      for (auto p : pick) chosen[p] = 1;
      w.clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (chosen[j]) continue;
        Row wj(d, 0);
        for (std::size_t c = 0; c < d; ++c) {
          __int128 s = 0;
          for (std::size_t i = 0; i < d; ++i) s += static_cast<__int128>(rows[j][i]) * adj[i][c];
          wj[c] = narrow(s);
        }
        w.push_back(std::move(wj));
      }
      // Sign vector s with s_0 = +1, walked in Gray-code order; the vertex is
      // adj s / pivot and the opposite signs give its negation.
      std::fill(signs.begin(), signs.end(), 1);
      for (std::size_t i = 0; i < d; ++i) {
        num[i] = 0;
        for (std::size_t c = 0; c < d; ++c) num[i] += adj[i][c];
      }
      t.assign(w.size(), 0);
      for (std::size_t j = 0; j < w.size(); ++j) {
        for (std::size_t c = 0; c < d; ++c) t[j] += w[j][c];
      }
      const std::int64_t bound = pivot < 0 ? -pivot : pivot;
      const std::uint64_t patterns = std::uint64_t{1} << (d - 1);
      for (std::uint64_t g = 0; g < patterns; ++g) {
        if (g != 0) {
          const auto flip = static_cast<std::size_t>(std::countr_zero(g)) + 1;
          const std::int64_t delta = -2 * signs[flip];
          signs[flip] = -signs[flip];
          for (std::size_t i = 0; i < d; ++i) num[i] += delta * adj[i][flip];
          for (std::size_t j = 0; j < w.size(); ++j) t[j] += delta * w[j][flip];
        }
        bool feasible = true;
        for (auto v : t) {
          if (v > bound || v < -bound) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        found.insert(normalize(num, pivot));
        std::vector<std::int64_t> neg(num);
        for (auto& v : neg) v = -v;
        found.insert(normalize(neg, pivot));
      }
    }
    // Next combination with pick[0] fixed.
    std::size_t i = d;
    while (i > 1) {
      --i;
      if (pick[i] < m - d + i) {
        ++pick[i];
        for (std::size_t j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 1) return;
    }
    if (d == 1) return;
  }
}

}  // namespace

std::vector<RealVector> unit_ball_vertices(const ConstraintSystem& system) {
  const std::size_t d = system.dimension();
  if (d == 0) return {};
  if (d > kMaxVertexDimension) {
    throw UnsupportedError("exhaustive vertex enumeration is limited to dimension " +
                           std::to_string(kMaxVertexDimension));
  }
  const auto rows = integer_rows(system);
  if (rows.size() < d) return {};

  std::vector<std::set<VertexKey>> partial(rows.size());
  parallel_for(rows.size(), [&](std::size_t first) { explore(rows, first, partial[first]); });
  std::set<VertexKey> all;
  for (auto& s : partial) all.merge(s);

  std::vector<RealVector> out;
  out.reserve(all.size());
  for (const auto& key : all) {
    RealVector v(d);
    const Integer den(static_cast<long>(key.back()));
    for (std::size_t i = 0; i < d; ++i) v[i] = make_rational(Integer(static_cast<long>(key[i])), den);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const RealVector& a, const RealVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
  });
  return out;
}

}  // namespace cantorlip
