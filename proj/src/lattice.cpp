#include "cdf/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdf {

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += f * row[src]
void add_row(ZMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(ZMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

SnfResult smith_normal_form(const ZMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  ZMatrix d = a;
  ZMatrix u = ZMatrix::identity(r);
  ZMatrix v = ZMatrix::identity(c);
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    bool found_any = false;
    for (;;) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (pi == r || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      found_any = true;
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q = d(i, t) / d(t, t);
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q = d(t, j) / d(t, t);
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == r) break;
      add_row(d, t, bad, 1);
      add_row(u, t, bad, 1);
    }
    if (!found_any) break;
    if (d(t, t) < 0) {
      add_row(d, t, t, -2);
      add_row(u, t, t, -2);
    }
  }
  SnfResult out;
  out.rows = r;
  out.cols = c;
  out.rank = t;
  out.diag.assign(std::min(r, c), 0);
  for (std::size_t i = 0; i < t; ++i) out.diag[i] = d(i, i);
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

SnfResult smith_normal_form(const IntMatrix& a) { return smith_normal_form(to_z(a)); }

std::vector<ZVec> hermite_basis(const std::vector<ZVec>& generators, std::size_t dim) {
  std::vector<ZVec> rows;
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("hermite_basis: vector length");
    rows.push_back(g);
  }
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
    // Euclid on column col among rows top..end.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        mpz_class q = rows[i][col] / rows[top][col];
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

std::vector<ZVec> integer_kernel(const ZMatrix& a) {
  SnfResult s = smith_normal_form(a);
  std::vector<ZVec> out;
  for (std::size_t j = s.rank; j < a.cols(); ++j) out.push_back(s.right.col(j));
  return out;
}

std::optional<ZVec> lattice_coordinates(const ZVec& w, const ZMatrix& a) {
  if (w.size() != a.rows()) throw std::invalid_argument("lattice_coordinates: length mismatch");
  SnfResult s = smith_normal_form(a);
  ZVec uw(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.rows(); ++k) uw[i] += s.left(i, k) * w[k];
  ZVec y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (uw[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = uw[i] / s.diag[i];
    } else if (uw[i] != 0) {
      return std::nullopt;
    }
  }
  ZVec lambda(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) lambda[i] += s.right(i, k) * y[k];
  return lambda;
}

std::optional<IntVec> lattice_coordinates(const IntVec& w, const IntMatrix& a) {
  auto r = lattice_coordinates(to_z(w), to_z(a));
  if (!r) return std::nullopt;
  return to_int(*r);
}

mpz_class determinant(const ZMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  QMatrix q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = a(i, j);
  mpq_class det = 1;
  for (std::size_t c = 0; c < q.cols(); ++c) {
    std::size_t p = c;
    while (p < q.rows() && q(p, c) == 0) ++p;
    if (p == q.rows()) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < q.cols(); ++j) std::swap(q(p, j), q(c, j));
      det = -det;
    }
    det *= q(c, c);
    for (std::size_t i = c + 1; i < q.rows(); ++i) {
      if (q(i, c) == 0) continue;
      mpq_class f = q(i, c) / q(c, c);
      for (std::size_t j = c; j < q.cols(); ++j) q(i, j) -= f * q(c, j);
    }
  }
  return det.get_num();
}

std::optional<AffineSolution> solve_affine(const QMatrix& a, const QVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_affine: length mismatch");
  const std::size_t rows = a.rows(), cols = a.cols();
  QMatrix m(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
    m(i, cols) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j <= cols; ++j) std::swap(m(r, j), m(p, j));
    mpq_class inv = 1 / m(r, c);
    for (std::size_t j = c; j <= cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      mpq_class f = m(i, c);
      for (std::size_t j = c; j <= cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m(i, cols) != 0) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(cols, 0);
  for (std::size_t i = 0; i < r; ++i) sol.particular[pivots[i]] = m(i, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = -m(i, f);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

QMatrix inverse(const QMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  QMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m(c, j), m(p, j));
    mpq_class inv = 1 / m(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) m(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      mpq_class f = m(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, n + j);
  return out;
}

}  // namespace cdf
