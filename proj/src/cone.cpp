#include "cdf/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cdf/lattice.hpp"
#include "cdf/lp.hpp"

namespace cdf {

namespace {

std::size_t rank_of_rows(const ZMatrix& a, const std::vector<std::size_t>& rows) {
  QMatrix q(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = a(rows[i], j);
  return rank(q);
}

// Greedy maximal independent subset of the rows, in order.
std::vector<std::size_t> independent_rows(const ZMatrix& a) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    chosen.push_back(i);
    if (rank_of_rows(a, chosen) < chosen.size()) chosen.pop_back();
  }
  return chosen;
}

mpz_class row_dot(const ZMatrix& a, std::size_t i, const ZVec& y) {
  mpz_class s = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * y[j];
  return s;
}

// Extreme rays of the pointed cone {y : a y >= 0}, a of full column rank.
std::vector<ZVec> pointed_rays(const ZMatrix& a) {
  const std::size_t k = a.cols();
  std::vector<std::size_t> start = independent_rows(a);
  QMatrix as(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) as(i, j) = a(start[i], j);
  QMatrix inv = inverse(as);
  std::vector<ZVec> rays;
  for (std::size_t j = 0; j < k; ++j) rays.push_back(primitive(clear_denominators(inv.col(j))));

  std::vector<std::size_t> processed = start;
  std::vector<bool> done(a.rows(), false);
  for (auto i : start) done[i] = true;

  auto tight = [&](const ZVec& y) {
    std::vector<std::size_t> z;
    for (auto i : processed)
      if (row_dot(a, i, y) == 0) z.push_back(i);
    return z;
  };

  for (std::size_t row = 0; row < a.rows(); ++row) {
    if (done[row]) continue;
    std::vector<ZVec> pos, neg, next;
    std::vector<mpz_class> pos_val, neg_val;
    for (auto& r : rays) {
      mpz_class s = row_dot(a, row, r);
      if (s > 0) {
        pos.push_back(r);
        pos_val.push_back(s);
        next.push_back(r);
      } else if (s < 0) {
        neg.push_back(r);
        neg_val.push_back(s);
      } else {
        next.push_back(r);
      }
    }
    if (k >= 2) {
      std::vector<std::vector<std::size_t>> pos_tight, neg_tight;
      for (auto& r : pos) pos_tight.push_back(tight(r));
      for (auto& r : neg) neg_tight.push_back(tight(r));
      for (std::size_t p = 0; p < pos.size(); ++p)
        for (std::size_t q = 0; q < neg.size(); ++q) {
          std::vector<std::size_t> common;
          std::set_intersection(pos_tight[p].begin(), pos_tight[p].end(), neg_tight[q].begin(),
                                neg_tight[q].end(), std::back_inserter(common));
          if (common.size() + 2 < k) continue;
          if (rank_of_rows(a, common) != k - 2) continue;
          ZVec y(k);
          for (std::size_t j = 0; j < k; ++j) y[j] = pos_val[p] * neg[q][j] - neg_val[q] * pos[p][j];
          next.push_back(primitive(y));
        }
    }
    rays = std::move(next);
    processed.insert(std::upper_bound(processed.begin(), processed.end(), row), row);
    done[row] = true;
  }
  return rays;
}

}  // namespace

Cone dual_cone(const std::vector<ZVec>& generators, std::size_t dim) {
  for (const auto& g : generators)
    if (g.size() != dim) throw std::invalid_argument("dual_cone: generator length");
  Cone out;
  out.ambient_dim = dim;
  out.inequality_form = generators;
  ZMatrix g = ZMatrix::from_rows(generators, dim);
  if (rank(g) == 0) {
    for (std::size_t i = 0; i < dim; ++i) {
      ZVec e(dim, 0);
      e[i] = 1;
      out.lineality.push_back(e);
    }
    return out;
  }
  out.lineality = hermite_basis(integer_kernel(g), dim);

  // The cone mod lineality lives in the row space; parametrize it by an
  // independent subset of the generators.
  std::vector<std::size_t> basis = independent_rows(g);
  const std::size_t k = basis.size();
  ZMatrix a(g.rows(), k);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      mpz_class s = 0;
      for (std::size_t c = 0; c < dim; ++c) s += g(i, c) * g(basis[j], c);
      a(i, j) = s;
    }
  std::set<ZVec> rays;
  for (const auto& y : pointed_rays(a)) {
    ZVec w(dim, 0);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < dim; ++c) w[c] += y[j] * g(basis[j], c);
    w = primitive(w);
    if (std::any_of(w.begin(), w.end(), [](const mpz_class& x) { return x != 0; })) rays.insert(w);
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

Cone dual_cone(const std::vector<IntVec>& generators, std::size_t dim) {
  std::vector<ZVec> z;
  for (const auto& g : generators) z.push_back(to_z(g));
  return dual_cone(z, dim);
}

std::vector<ZVec> cone_generators(const Cone& c) {
  std::vector<ZVec> out = c.rays;
  for (const auto& l : c.lineality) {
    out.push_back(l);
    ZVec neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    out.push_back(neg);
  }
  return out;
}

bool contains(const Cone& c, const ZVec& x) {
  std::vector<ZVec> normals;
  if (c.inequality_form) {
    normals = *c.inequality_form;
  } else {
    normals = cone_generators(dual_cone(cone_generators(c), c.ambient_dim));
  }
  for (const auto& nrm : normals)
    if (dot(nrm, x) < 0) return false;
  return true;
}

bool is_simplicial(const Cone& c) {
  if (c.rays.empty()) return true;
  return rank(ZMatrix::from_rows(c.rays)) == c.rays.size();
}

bool is_full_dimensional(const Cone& c) {
  std::vector<ZVec> all = c.rays;
  all.insert(all.end(), c.lineality.begin(), c.lineality.end());
  if (all.empty()) return c.ambient_dim == 0;
  return rank(ZMatrix::from_rows(all)) == c.ambient_dim;
}

bool is_smooth(const Cone& c) {
  if (!is_simplicial(c)) return false;
  if (c.rays.empty()) return true;
  const std::size_t d = c.ambient_dim;
  const std::size_t l = c.lineality.size();
  // Coordinates adapted to the saturated lineality lattice: x -> last d-l
  // entries of x * right, where lineality * right = left^-1 [I 0].
  ZMatrix right = ZMatrix::identity(d);
  if (l > 0) right = smith_normal_form(ZMatrix::from_rows(c.lineality)).right;
  std::vector<ZVec> images;
  for (const auto& r : c.rays) {
    ZVec img(d - l, 0);
    for (std::size_t j = l; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) img[j - l] += r[i] * right(i, j);
    images.push_back(primitive(img));
  }
  SnfResult s = smith_normal_form(ZMatrix::from_rows(images));
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diag[i] != 1) return false;
  return s.rank == images.size();
}

}  // namespace cdf
