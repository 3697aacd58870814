#include "cdf/cotangent.hpp"

#include <algorithm>
#include <set>

#include "cdf/errors.hpp"
#include "cdf/lattice.hpp"
#include "cdf/lp.hpp"

namespace cdf {

std::size_t exchange_partner(const Atlas& atlas, std::size_t seed, std::size_t k) {
  const SeedRecord& s = atlas.seeds().at(seed);
  const SeedRecord& t = atlas.seeds().at(s.neighbor.at(k));
  return t.cluster[s.neighbor_position[k][k]];
}

std::vector<T1Family> t1_degree_families(const Atlas& atlas) {
  const std::size_t n = atlas.n();
  std::set<std::pair<std::pair<std::size_t, std::size_t>, Face>> seen;
  std::vector<T1Family> out;
  for (std::size_t si = 0; si < atlas.seeds().size(); ++si) {
    const SeedRecord& s = atlas.seeds()[si];
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
      for (std::size_t k = 0; k < n; ++k) {
        if (mask >> k & 1) continue;
        // k is isolated once the vertices in mask are removed.
        bool isolated = true;
        for (std::size_t j = 0; j < n && isolated; ++j)
          if (j != k && !(mask >> j & 1) && s.matrix(j, k) != 0) isolated = false;
        if (!isolated) continue;
        T1Family f;
        f.seed = si;
        f.k = k;
        f.v = s.cluster[k];
        f.w = exchange_partner(atlas, si, k);
        if (f.v > f.w) std::swap(f.v, f.w);
        for (std::size_t j = 0; j < n; ++j)
          if (mask >> j & 1) f.omega.push_back(s.cluster[j]);
        std::sort(f.omega.begin(), f.omega.end());
        if (seen.insert({{f.v, f.w}, f.omega}).second) out.push_back(std::move(f));
      }
  }
  return out;
}

std::vector<IntVec> t1_solutions(const IntMatrix& b, std::size_t n, std::size_t j,
                                 const std::optional<IntVec>& degrees, std::optional<Int> bound) {
  const std::size_t m = b.rows();
  if (!degrees && !bound) throw InputError("no strictly positive grading and no bound given");
  IntVec lo(m, 0), hi(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == j) continue;
    Int pos = std::max<Int>(0, b(i, j));
    lo[i] = (i < n && b(i, j) != 0) ? 1 - pos : -pos;
  }
  std::vector<bool> has_hi(m, false);
  if (degrees) {
    for (std::size_t i = 0; i < m; ++i) {
      if ((*degrees)[i] < 1) throw InputError("grading is not strictly positive");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      Int rest = 0;
      for (std::size_t l = 0; l < m; ++l)
        if (l != i && l != j) rest = checked_add(rest, checked_mul((*degrees)[l], lo[l]));
      // deg_i w_i <= -rest
      Int num = -rest, den = (*degrees)[i];
      hi[i] = num >= 0 ? num / den : -((-num + den - 1) / den);
      has_hi[i] = true;
    }
  }
  if (bound) {
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      lo[i] = std::max(lo[i], -*bound);
      hi[i] = has_hi[i] ? std::min(hi[i], *bound) : *bound;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (i != j && lo[i] > hi[i]) return {};

  std::vector<ZVec> cols;
  for (std::size_t c = 0; c < b.cols(); ++c) cols.push_back(to_z(b.col(c)));
  std::vector<ZVec> basis = hermite_basis(cols, m);
  const std::size_t r = basis.size();
  if (r == 0) return {IntVec(m, 0)};

  // Box for the coordinates mu of w = sum mu_s basis_s, from LPs over the polytope.
  LinearProgram lp;
  lp.num_vars = r;
  for (std::size_t i = 0; i < m; ++i) {
    QVec row(r);
    for (std::size_t s = 0; s < r; ++s) row[s] = basis[s][i];
    if (i == j) {
      lp.equal.emplace_back(row, 0);
      continue;
    }
    lp.at_least.emplace_back(row, lo[i]);
    QVec neg(r);
    for (std::size_t s = 0; s < r; ++s) neg[s] = -row[s];
    lp.at_least.emplace_back(neg, -hi[i]);
  }
  std::vector<Int> mu_lo(r), mu_hi(r);
  for (std::size_t s = 0; s < r; ++s) {
    for (int sign : {1, -1}) {
      lp.objective.assign(r, 0);
      lp.objective[s] = sign;
      auto opt = solve_lp(lp);
      if (!opt) return {};
      mpq_class v = (*opt)[s];
      if (sign > 0) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        mu_lo[s] = to_int(c);
      } else {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        mu_hi[s] = to_int(f);
      }
    }
    if (mu_lo[s] > mu_hi[s]) return {};
  }
  double volume = 1;
  for (std::size_t s = 0; s < r; ++s) volume *= static_cast<double>(mu_hi[s] - mu_lo[s] + 1);
  if (volume > 5e7) throw BudgetError("T1 enumeration box too large");

  std::vector<IntVec> out;
  std::vector<Int> mu = mu_lo;
  for (;;) {
    IntVec w(m, 0);
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t i = 0; i < m; ++i) w[i] = checked_add(w[i], checked_mul(mu[s], to_int(basis[s][i])));
    bool ok = w[j] == 0;
    for (std::size_t i = 0; i < m && ok; ++i)
      if (i != j && (w[i] < lo[i] || w[i] > hi[i])) ok = false;
    if (ok) out.push_back(std::move(w));
    std::size_t s = 0;
    while (s < r && mu[s] == mu_hi[s]) mu[s] = mu_lo[s], ++s;
    if (s == r) break;
    ++mu[s];
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVec seed_degrees(const Atlas& atlas, std::size_t seed, const IntVec& grading) {
  const SeedRecord& s = atlas.seeds().at(seed);
  IntVec out(atlas.m(), 0);
  for (std::size_t i = 0; i < atlas.m(); ++i) {
    const IntVec& g = g_vector(atlas, s.cluster[i]);
    for (std::size_t l = 0; l < g.size(); ++l) out[i] = checked_add(out[i], checked_mul(g[l], grading[l]));
  }
  return out;
}

std::vector<PinnedDegree> t1_invariant(const Atlas& atlas, const std::optional<IntVec>& grading,
                                       std::optional<Int> bound) {
  if (!grading && !bound) throw InputError("no strictly positive grading");
  const std::size_t n = atlas.n(), m = atlas.m(), nz = atlas.variables().size();
  std::vector<PinnedDegree> out;
  std::set<std::pair<IntVec, IntVec>> seen;
  for (std::size_t si = 0; si < atlas.seeds().size(); ++si) {
    const SeedRecord& s = atlas.seeds()[si];
    std::optional<IntVec> deg;
    if (grading) deg = seed_degrees(atlas, si, *grading);
    for (std::size_t k = 0; k < n; ++k) {
      for (auto& w : t1_solutions(s.matrix, n, k, deg, bound)) {
        PinnedDegree p;
        p.seed = si;
        p.k = k;
        p.v = s.cluster[k];
        p.w = exchange_partner(atlas, si, k);
        if (p.v > p.w) std::swap(p.v, p.w);
        p.a.assign(nz, 0);
        p.b.assign(nz, 0);
        p.b[p.v] = 1;
        p.b[p.w] = 1;
        for (std::size_t i = 0; i < m; ++i)
          if (i != k) p.a[s.cluster[i]] = w[i] + std::max<Int>(0, s.matrix(i, k));
        p.witness = std::move(w);
        if (seen.insert({p.a, p.b}).second) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<PinnedDegree> characteristic_image(const UniversalData& u) {
  if (has_degenerate_vertex(u.base.initial_seed().matrix))
    throw InputError("isolated vertex without frozen neighbours: characteristic map is degenerate");
  std::vector<PinnedDegree> out;
  for (std::size_t i = 0; i < u.p(); ++i) {
    if (u.owners[i].empty()) throw std::logic_error("coefficient without an owning relation");
    auto [index, sign] = u.owners[i].front();
    const UniversalRelation& r = u.relations[index];
    PinnedDegree p;
    p.v = r.v;
    p.w = r.w;
    p.a = sign > 0 ? r.plus.z : r.minus.z;
    p.b.assign(u.num_z(), 0);
    p.b[r.v] = 1;
    p.b[r.w] = 1;
    out.push_back(std::move(p));
  }
  return out;
}

ObstructionClass obstruction_class(const Atlas& atlas) {
  FiniteTypeResult ft = classify_mutation_class(atlas);
  if (!ft.finite) throw InputError("not of finite cluster type");
  std::string types;
  for (const auto& c : ft.components) types += (types.empty() ? "" : " x ") + c;
  const IntMatrix top = atlas.initial_seed().matrix.principal();
  bool skew = true;
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j)
      if (top(i, j) != -top(j, i)) skew = false;
  ObstructionClass out;
  out.unobstructed = skew;
  out.reason = skew ? "type " + types + " is simply laced: the cluster complex is unobstructed"
                    : "type " + types + " is not simply laced: the cluster complex is obstructed";
  return out;
}

}  // namespace cdf
