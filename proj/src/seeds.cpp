#include "cdf/seeds.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "cdf/errors.hpp"

namespace cdf {

std::optional<IntVec> skew_symmetrizer(const IntMatrix& b) {
  const std::size_t n = b.rows();
  if (b.cols() != n) throw InputError("skew_symmetrizer: square matrix expected");
  std::vector<mpq_class> d(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    std::vector<std::size_t> comp{root};
    d[root] = 1;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j) == 0 && b(j, i) == 0) continue;
        if (b(i, j) == 0 || b(j, i) == 0) return std::nullopt;
        if ((b(i, j) > 0) == (b(j, i) > 0)) return std::nullopt;
        // d_i b_ij = -d_j b_ji
        mpq_class dj = d[i] * static_cast<long>(b(i, j)) / static_cast<long>(-b(j, i));
        if (d[j] == 0) {
          d[j] = dj;
          comp.push_back(j);
          q.push(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    mpz_class den = 1, num = 0;
    for (auto i : comp) den = lcm(den, d[i].get_den());
    for (auto i : comp) num = gcd(num, mpz_class(d[i] * den));
    for (auto i : comp) d[i] = d[i] * den / num;
  }
  IntVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = to_int(d[i].get_num());
  return out;
}

ExchangeMatrix::ExchangeMatrix(IntMatrix entries, std::size_t n, std::optional<IntVec> symmetrizer)
    : entries_(std::move(entries)), n_(n) {
  if (entries_.cols() != n) throw InputError("exchange matrix must have n columns");
  if (entries_.rows() < n) throw InputError("exchange matrix needs m >= n rows");
  IntMatrix top = principal();
  for (std::size_t i = 0; i < n; ++i)
    if (top(i, i) != 0) throw InputError("exchange matrix diagonal must be zero");
  if (symmetrizer) {
    if (symmetrizer->size() != n) throw InputError("symmetrizer length must be n");
    for (Int x : *symmetrizer)
      if (x <= 0) throw InputError("symmetrizer entries must be positive");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (checked_mul((*symmetrizer)[i], top(i, j)) != -checked_mul((*symmetrizer)[j], top(j, i)))
          throw InputError("matrix is not skew-symmetrized by the given d");
    d_ = *symmetrizer;
  } else {
    auto d = skew_symmetrizer(top);
    if (!d) throw InputError("top block is not skew-symmetrizable");
    d_ = *d;
  }
}

IntMatrix ExchangeMatrix::principal() const {
  IntMatrix out(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(i, j) = entries_(i, j);
  return out;
}

ExchangeMatrix ExchangeMatrix::with_frozen(const std::vector<IntVec>& frozen_rows) const {
  IntMatrix e = principal();
  for (const auto& r : frozen_rows) e.append_row(r);
  return ExchangeMatrix(std::move(e), n_, d_);
}

ExchangeMatrix ExchangeMatrix::append_rows(const std::vector<IntVec>& rows) const {
  IntMatrix e = entries_;
  for (const auto& r : rows) e.append_row(r);
  return ExchangeMatrix(std::move(e), n_, d_);
}

ExchangeMatrix ExchangeMatrix::transpose_principal() const {
  return ExchangeMatrix(principal().transpose(), n_);
}

IntMatrix mutate_entries(const IntMatrix& b, std::size_t k) {
  if (k >= b.cols() || k >= b.rows()) throw InputError("mutation index out of range");
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        out(i, j) = -b(i, j);
        continue;
      }
      Int prod = checked_mul(b(i, k), b(k, j));
      Int sgn = (b(i, k) > 0) - (b(i, k) < 0);
      out(i, j) = checked_add(b(i, j), checked_mul(sgn, std::max<Int>(prod, 0)));
    }
  return out;
}

ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k) {
  if (k >= b.n()) throw InputError("mutation index out of range");
  return ExchangeMatrix(mutate_entries(b.entries(), k), b.n(), b.symmetrizer());
}

IntMatrix e_matrix(const ExchangeMatrix& b, std::size_t k, int sign) {
  if (k >= b.n()) throw InputError("mutation index out of range");
  if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
  IntMatrix e = IntMatrix::identity(b.m());
  for (std::size_t i = 0; i < b.m(); ++i) e(i, k) = std::max<Int>(0, -sign * b(i, k));
  e(k, k) = -1;
  return e;
}

Seed make_seed(ExchangeMatrix matrix, std::vector<std::string> labels, std::optional<IntMatrix> grading) {
  const std::size_t n = matrix.n(), m = matrix.m();
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = n; i < m; ++i) labels.push_back("s" + std::to_string(i - n + 1));
  }
  if (labels.size() != m) throw InputError("need one label per row");
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("labels must be distinct");
  if (grading) {
    if (grading->rows() != m) throw InputError("grading needs one row per variable");
    if (!is_graded(matrix, *grading)) throw InputError("grading does not satisfy B^T D = 0");
  }
  return Seed{std::move(matrix), std::move(labels), std::move(grading)};
}

Seed mutate(const Seed& s, std::size_t k) {
  Seed out;
  out.matrix = mutate(s.matrix, k);
  out.var_ids = s.var_ids;
  out.var_ids[k] += "'";
  if (s.grading) out.grading = multiply(e_matrix(s.matrix, k, 1).transpose(), *s.grading);
  return out;
}

bool is_graded(const ExchangeMatrix& b, const IntMatrix& d) {
  IntMatrix prod = multiply(b.entries().transpose(), d);
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (prod(i, j) != 0) return false;
  return true;
}

std::vector<std::vector<std::size_t>> diagram_components(const ExchangeMatrix& b) {
  const std::size_t n = b.n();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    out.emplace_back();
    std::queue<std::size_t> q;
    q.push(root);
    comp[root] = static_cast<int>(out.size() - 1);
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      out.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (b(i, j) != 0 && comp[j] < 0) {
          comp[j] = comp[root];
          q.push(j);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

namespace {

// Name a connected Dynkin diagram given its Cartan counterpart (already
// known to be positive definite).
std::string dynkin_name(const ExchangeMatrix& b, const std::vector<std::size_t>& comp) {
  const std::size_t r = comp.size();
  if (r == 1) return "A1";
  auto weight = [&](std::size_t i, std::size_t j) { return std::abs(b(i, j) * b(j, i)); };
  std::vector<std::size_t> degree(r, 0);
  std::size_t heavy_a = r, heavy_b = r;
  Int heavy = 1;
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = 0; y < r; ++y) {
      if (x == y || b(comp[x], comp[y]) == 0) continue;
      ++degree[x];
      Int w = weight(comp[x], comp[y]);
      if (w > 1) {
        heavy = w;
        heavy_a = x;
        heavy_b = y;
      }
    }
  std::string rs = std::to_string(r);
  if (heavy == 3) return "G2";
  if (heavy == 2) {
    if (r == 2) return "B2";
    if (r == 4 && degree[heavy_a] == 2 && degree[heavy_b] == 2) return "F4";
    // The leaf end of the double edge is a short root (smaller symmetrizer) in B_n.
    std::size_t leaf = degree[heavy_a] == 1 ? heavy_a : heavy_b;
    std::size_t inner = leaf == heavy_a ? heavy_b : heavy_a;
    const IntVec& d = b.symmetrizer();
    return (d[comp[leaf]] < d[comp[inner]] ? "B" : "C") + rs;
  }
  std::size_t branch = r;
  for (std::size_t x = 0; x < r; ++x)
    if (degree[x] == 3) branch = x;
  if (branch == r) return "A" + rs;
  // Arm lengths from the branch vertex.
  std::vector<std::size_t> arms;
  for (std::size_t y = 0; y < r; ++y) {
    if (y == branch || b(comp[branch], comp[y]) == 0) continue;
    std::size_t len = 1, prev = branch, cur = y;
    for (;;) {
      std::size_t next = r;
      for (std::size_t z = 0; z < r; ++z)
        if (z != prev && z != cur && b(comp[cur], comp[z]) != 0) next = z;
      if (next == r) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + rs;
  return "E" + rs;
}

}  // namespace

FiniteTypeResult classify_finite_type(const ExchangeMatrix& b) {
  FiniteTypeResult out;
  out.finite = true;
  for (const auto& comp : diagram_components(b)) {
    const std::size_t r = comp.size();
    QMatrix cartan(r, r);
    for (std::size_t x = 0; x < r; ++x)
      for (std::size_t y = 0; y < r; ++y)
        cartan(x, y) = x == y ? 2 : -std::abs(b(comp[x], comp[y]));
    bool positive = true;
    // Leading principal minors by elimination without pivoting.
    QMatrix m = cartan;
    for (std::size_t c = 0; c < r && positive; ++c) {
      if (m(c, c) <= 0) {
        positive = false;
        break;
      }
      for (std::size_t i = c + 1; i < r; ++i) {
        mpq_class f = m(i, c) / m(c, c);
        for (std::size_t j = c; j < r; ++j) m(i, j) -= f * m(c, j);
      }
    }
    if (positive) {
      out.components.push_back(dynkin_name(b, comp));
    } else {
      out.finite = false;
      out.components.push_back("not finite");
    }
  }
  return out;
}

bool is_isolated_vertex_free(const ExchangeMatrix& b) {
  for (std::size_t k = 0; k < b.n(); ++k) {
    bool isolated = true;
    for (std::size_t j = 0; j < b.n() && isolated; ++j)
      if (b(k, j) != 0 || b(j, k) != 0) isolated = false;
    if (isolated) return false;
  }
  return true;
}

}  // namespace cdf
