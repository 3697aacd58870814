#include "cdf/lp.hpp"

#include <stdexcept>

namespace cdf {

namespace {

// Dense tableau simplex with Bland's rule. Columns [0, ncols) plus rhs.
class Tableau {
public:
  Tableau(QMatrix rows, std::vector<std::size_t> basis)
      : t_(std::move(rows)), basis_(std::move(basis)), ncols_(t_.cols() - 1) {}

  // Minimize cost over columns allowed[j]; false if unbounded.
  bool optimize(const QVec& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < ncols_ && enter == ncols_; ++j) {
        if (!allowed[j]) continue;
        mpq_class rc = cost[j];
        for (std::size_t i = 0; i < t_.rows(); ++i) rc -= cost[basis_[i]] * t_(i, j);
        if (rc < 0) enter = j;
      }
      if (enter == ncols_) return true;
      std::size_t leave = t_.rows();
      mpq_class best;
      for (std::size_t i = 0; i < t_.rows(); ++i) {
        if (t_(i, enter) <= 0) continue;
        mpq_class ratio = t_(i, ncols_) / t_(i, enter);
        if (leave == t_.rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.rows()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    mpq_class inv = 1 / t_(r, c);
    for (std::size_t j = 0; j <= ncols_; ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, c) == 0) continue;
      mpq_class f = t_(i, c);
      for (std::size_t j = 0; j <= ncols_; ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  QMatrix& table() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t ncols() const { return ncols_; }

  void drop_row(std::size_t r) {
    QMatrix next(t_.rows() - 1, t_.cols());
    for (std::size_t i = 0, k = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < t_.cols(); ++j) next(k, j) = t_(i, j);
      ++k;
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

private:
  QMatrix t_;
  std::vector<std::size_t> basis_;
  std::size_t ncols_;
};

}  // namespace

std::optional<QVec> solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t nge = lp.at_least.size();
  const std::size_t nrows = nge + lp.equal.size();
  // Columns: x+ (n), x- (n), slack (nge), artificial (nrows).
  const std::size_t art0 = 2 * n + nge;
  const std::size_t ncols = art0 + nrows;
  QMatrix t(nrows, ncols + 1);
  std::vector<std::size_t> basis(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    const auto& [a, b] = i < nge ? lp.at_least[i] : lp.equal[i - nge];
    if (a.size() != n) throw std::invalid_argument("solve_lp: row length");
    mpq_class sign = b < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      t(i, j) = sign * a[j];
      t(i, n + j) = -sign * a[j];
    }
    if (i < nge) t(i, 2 * n + i) = -sign;
    t(i, art0 + i) = 1;
    t(i, ncols) = sign * b;
    basis[i] = art0 + i;
  }
  Tableau tab(std::move(t), std::move(basis));

  QVec phase1(ncols, 0);
  for (std::size_t j = art0; j < ncols; ++j) phase1[j] = 1;
  std::vector<bool> all(ncols, true);
  tab.optimize(phase1, all);
  mpq_class infeasibility = 0;
  for (std::size_t i = 0; i < tab.table().rows(); ++i)
    if (tab.basis()[i] >= art0) infeasibility += tab.table()(i, ncols);
  if (infeasibility != 0) return std::nullopt;

  // Pivot remaining artificials out of the basis, dropping redundant rows.
  for (std::size_t i = 0; i < tab.table().rows();) {
    if (tab.basis()[i] < art0) {
      ++i;
      continue;
    }
    std::size_t c = 0;
    while (c < art0 && tab.table()(i, c) == 0) ++c;
    if (c == art0) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, c);
      ++i;
    }
  }

  QVec cost(ncols, 0);
  if (!lp.objective.empty()) {
    if (lp.objective.size() != n) throw std::invalid_argument("solve_lp: objective length");
    for (std::size_t j = 0; j < n; ++j) {
      cost[j] = lp.objective[j];
      cost[n + j] = -lp.objective[j];
    }
  }
  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;
  if (!tab.optimize(cost, allowed)) throw std::runtime_error("unbounded LP");

  QVec x(n, 0);
  for (std::size_t i = 0; i < tab.table().rows(); ++i) {
    std::size_t b = tab.basis()[i];
    if (b < n) x[b] += tab.table()(i, ncols);
    else if (b < 2 * n) x[b - n] -= tab.table()(i, ncols);
  }
  return x;
}

ZVec clear_denominators(const QVec& v) {
  mpz_class l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * l;
    out[i] = s.get_num();
  }
  return out;
}

}  // namespace cdf
