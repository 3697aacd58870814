#include "cdf/gradings.hpp"

#include <algorithm>
#include <numeric>

#include "cdf/errors.hpp"
#include "cdf/lp.hpp"

namespace cdf {

namespace {

Int reduce_mod(Int x, Int t) {
  Int r = x % t;
  return r < 0 ? r + t : r;
}

}  // namespace

HDegree GradingData::degree(const IntVec& e) const {
  HDegree out = zero();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    for (std::size_t j = 0; j < free_rank; ++j)
      out.free[j] = checked_add(out.free[j], checked_mul(e[i], initial_free(i, j)));
    for (std::size_t j = 0; j < torsion.size(); ++j)
      out.torsion[j] = reduce_mod(out.torsion[j] + reduce_mod(e[i], torsion[j]) * initial_torsion(i, j), torsion[j]);
  }
  return out;
}

HDegree GradingData::add(const HDegree& a, const HDegree& b) const {
  HDegree out = a;
  for (std::size_t j = 0; j < free_rank; ++j) out.free[j] = checked_add(out.free[j], b.free[j]);
  for (std::size_t j = 0; j < torsion.size(); ++j)
    out.torsion[j] = reduce_mod(out.torsion[j] + b.torsion[j], torsion[j]);
  return out;
}

HDegree GradingData::zero() const { return HDegree{IntVec(free_rank, 0), IntVec(torsion.size(), 0)}; }

GradingData m_grading(const ExchangeMatrix& b) {
  GradingData gd;
  const std::size_t m = b.m();
  gd.snf = smith_normal_form(b.entries());
  // In the coordinates given by left, the image of B~ is diag * Z^n.
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t j = 0; j < m; ++j) {
    if (j < gd.snf.rank) {
      if (gd.snf.diag[j] != 1) {
        torsion_rows.push_back(j);
        gd.torsion.push_back(to_int(gd.snf.diag[j]));
      }
    } else {
      free_rows.push_back(j);
    }
  }
  gd.free_rank = free_rows.size();
  gd.initial_free = IntMatrix(m, gd.free_rank);
  gd.initial_torsion = IntMatrix(m, torsion_rows.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < free_rows.size(); ++j) gd.initial_free(i, j) = to_int(gd.snf.left(free_rows[j], i));
    for (std::size_t j = 0; j < torsion_rows.size(); ++j)
      gd.initial_torsion(i, j) = reduce_mod(to_int(mpz_class(gd.snf.left(torsion_rows[j], i) % gd.torsion[j])),
                                            gd.torsion[j]);
  }
  return gd;
}

HDegree variable_degree(const GradingData& gd, const Atlas& atlas, std::size_t id) {
  return gd.degree(g_vector(atlas, id));
}

GradingData rebase(const GradingData& gd, const std::vector<std::size_t>& basis_rows) {
  if (!gd.torsion.empty()) throw InputError("rebase needs a torsion-free grading group");
  const std::size_t d = gd.free_rank;
  if (basis_rows.size() != d) throw InputError("rebase needs one row per free rank");
  QMatrix p(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) p(r, c) = gd.initial_free(basis_rows.at(r), c);
  QMatrix pinv = inverse(p);
  GradingData out = gd;
  for (std::size_t i = 0; i < gd.initial_free.rows(); ++i)
    for (std::size_t c = 0; c < d; ++c) {
      mpq_class v = 0;
      for (std::size_t k = 0; k < d; ++k) v += gd.initial_free(i, k) * pinv(k, c);
      if (v.get_den() != 1) throw InputError("basis rows do not form a lattice basis");
      out.initial_free(i, c) = to_int(v.get_num());
    }
  return out;
}

RankFlags rank_flags(const ExchangeMatrix& b) {
  SnfResult s = smith_normal_form(b.entries());
  RankFlags out;
  out.full_rank = s.rank == b.n();
  out.full_z_rank = out.full_rank;
  for (std::size_t j = 0; j < s.rank; ++j)
    if (s.diag[j] != 1) out.full_z_rank = false;
  return out;
}

namespace {

std::optional<IntVec> positive_grading(const Atlas& atlas, bool strict) {
  const ExchangeMatrix& b = atlas.initial_seed().matrix;
  const std::size_t m = b.m();
  std::vector<ZVec> kernel = integer_kernel(to_z(b.entries().transpose()));
  if (kernel.empty()) return std::nullopt;
  const std::size_t r = kernel.size();
  // D = sum_k y_k kernel_k; the degree of a variable with g-vector g is sum_k y_k (g . kernel_k).
  auto row_for = [&](const IntVec& g) {
    QVec a(r);
    for (std::size_t k = 0; k < r; ++k) {
      mpz_class s = 0;
      for (std::size_t i = 0; i < m; ++i) s += g[i] * kernel[k][i];
      a[k] = s;
    }
    return a;
  };
  LinearProgram lp;
  lp.num_vars = r;
  lp.objective.assign(r, 0);
  std::vector<std::size_t> ids = atlas.mutable_ids();
  if (strict) {
    auto fr = atlas.frozen_ids();
    ids.insert(ids.end(), fr.begin(), fr.end());
  }
  for (auto id : ids) {
    QVec a = row_for(g_vector(atlas, id));
    for (std::size_t k = 0; k < r; ++k) lp.objective[k] += a[k];
    lp.at_least.emplace_back(std::move(a), 1);
  }
  auto y = solve_lp(lp);
  if (!y) return std::nullopt;
  QVec d(m, 0);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < m; ++i) d[i] += (*y)[k] * kernel[k][i];
  return to_int(clear_denominators(d));
}

}  // namespace

std::optional<IntVec> find_positive_grading(const Atlas& atlas) { return positive_grading(atlas, false); }

std::optional<IntVec> find_strictly_positive_grading(const Atlas& atlas) { return positive_grading(atlas, true); }

Seed add_frozen_for_positivity(const Seed& seed, std::size_t max_seeds) {
  Atlas atlas = enumerate(seed, AtlasOptions{max_seeds, false});
  const std::size_t n = atlas.n(), m = atlas.m();
  Int c = 0;
  bool first = true;
  for (auto id : atlas.mutable_ids()) {
    const IntVec& g = g_vector(atlas, id);
    Int s = std::accumulate(g.begin(), g.end(), Int{0});
    if (first || s < c) c = s;
    first = false;
  }
  c -= 1;
  std::vector<IntVec> rows;
  for (std::size_t k = 0; k < n; ++k) {
    IntVec row(n, 0);
    row[k] = -std::abs(c);
    rows.push_back(std::move(row));
  }
  IntVec balance(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Int s = 0;
    for (std::size_t i = 0; i < m; ++i) s = checked_add(s, seed.matrix(i, j));
    for (const auto& row : rows) s = checked_add(s, row[j]);
    balance[j] = -s;
  }
  rows.push_back(balance);
  ExchangeMatrix bigger = seed.matrix.append_rows(rows);
  std::vector<std::string> labels = seed.var_ids;
  for (std::size_t k = 0; k <= n; ++k) {
    std::string l = "f" + std::to_string(k + 1);
    while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
    labels.push_back(l);
  }
  IntMatrix ones(bigger.m(), 1);
  for (std::size_t i = 0; i < bigger.m(); ++i) ones(i, 0) = 1;
  return make_seed(std::move(bigger), std::move(labels), ones);
}

}  // namespace cdf
