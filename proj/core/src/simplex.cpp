#include "simplex.hpp"

#include <limits>
#include <optional>

#include "cantorlip/errors.hpp"

namespace cantorlip::detail {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
      : rows_(a.size()), structural_(a.empty() ? 0 : a.front().size()) {
    cols_ = structural_ + rows_;
    t_.assign(rows_, std::vector<Rational>(cols_ + 1));
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (a[r].size() != structural_) throw DimensionError("ragged constraint matrix");
      const bool flip = sgn(b[r]) < 0;
      for (std::size_t j = 0; j < structural_; ++j) t_[r][j] = flip ? Rational(-a[r][j]) : a[r][j];
      t_[r][structural_ + r] = 1;
      t_[r][cols_] = flip ? Rational(-b[r]) : b[r];
      basis_[r] = structural_ + r;
    }
  }

  bool is_artificial(std::size_t j) const { return j >= structural_; }

  // Reduced costs z_j = c_j - c_B^T B^{-1} A_j plus the objective value in
  // the rhs slot (negated, as carried by the tableau).
  void price(const std::vector<Rational>& cost) {
    cost_ = cost;
    z_.assign(cols_ + 1, Rational());
    for (std::size_t j = 0; j <= cols_; ++j) z_[j] = j < cols_ ? cost[j] : Rational();
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) z_[j] -= cb * t_[r][j];
      }
    }
  }

  // Runs Bland-rule pivots until optimal or unbounded.
  LpStatus optimize(bool allow_artificial) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return LpStatus::optimal;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(t_[r][enter]) <= 0) continue;
        Rational ratio = t_[r][cols_] / t_[r][enter];
        if (leave == kNone || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const Rational inv = 1 / t_[row][col];
    for (auto& v : t_[row]) {
      if (sgn(v) != 0) v *= inv;
    }
    const auto& prow = t_[row];
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[col]) == 0) return;
      const Rational factor = target[col];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(prow[j]) != 0) target[j] -= factor * prow[j];
      }
    };
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != row) eliminate(t_[r]);
    }
    if (!z_.empty()) eliminate(z_);
    basis_[row] = col;
  }

  // Moves artificial columns out of the basis after phase one; rows whose
  // structural part vanished are redundant and get dropped.
  std::size_t expel_artificials() {
    std::size_t dropped = 0;
    for (std::size_t r = 0; r < rows_;) {
      if (!is_artificial(basis_[r])) {
        ++r;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (sgn(t_[r][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col != kNone) {
        pivot(r, col);
        ++r;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
        ++dropped;
      }
    }
    return dropped;
  }

  Rational objective() const { return -z_[cols_]; }
  std::size_t structural() const { return structural_; }
  std::size_t columns() const { return cols_; }
  std::size_t pivots() const { return pivots_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(structural_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) x[basis_[r]] = t_[r][cols_];
    }
    return x;
  }

 private:
  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

StandardFormResult simplex_minimize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                    const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw DimensionError("row count mismatch between A and b");
  Tableau tab(a, b);
  if (c.size() != tab.structural()) throw DimensionError("cost vector dimension mismatch");

  StandardFormResult out;
  std::vector<Rational> phase_one(tab.columns());
  for (std::size_t j = tab.structural(); j < tab.columns(); ++j) phase_one[j] = 1;
  tab.price(phase_one);
  tab.optimize(true);
  if (sgn(tab.objective()) != 0) {
    out.status = LpStatus::infeasible;
    out.pivots = tab.pivots();
    return out;
  }
  out.dropped_rows = tab.expel_artificials();

  std::vector<Rational> phase_two(tab.columns());
  for (std::size_t j = 0; j < c.size(); ++j) phase_two[j] = c[j];
  tab.price(phase_two);
  out.status = tab.optimize(false);
  out.pivots = tab.pivots();
  if (out.status == LpStatus::optimal) {
    out.value = tab.objective();
    out.x = tab.solution();
    out.basis = tab.basis();
  }
  return out;
}

std::vector<Rational> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DimensionError("right-hand side dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw DimensionError("singular system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rational inv = 1 / m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace cantorlip::detail
