#include "cdf/atlas.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cdf/errors.hpp"

namespace cdf {

const ClusterVariable& Atlas::variable(std::size_t id) const {
  if (id >= variables_.size()) throw InputError("unknown variable id " + std::to_string(id));
  return variables_[id];
}

std::optional<std::size_t> Atlas::find_by_g(const IntVec& g) const {
  auto it = by_g_.find(g);
  if (it == by_g_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Atlas::find_pair(std::size_t a, std::size_t b) const {
  auto it = pair_index_.find({std::min(a, b), std::max(a, b)});
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Atlas::mutable_ids() const {
  std::vector<std::size_t> out;
  for (const auto& v : variables_)
    if (!v.frozen) out.push_back(v.id);
  return out;
}

std::vector<std::size_t> Atlas::frozen_ids() const {
  std::vector<std::size_t> out;
  for (const auto& v : variables_)
    if (v.frozen) out.push_back(v.id);
  return out;
}

std::vector<std::vector<std::size_t>> Atlas::clusters() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : seeds_) {
    std::vector<std::size_t> c(s.cluster.begin(), s.cluster.begin() + static_cast<std::ptrdiff_t>(n()));
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

LabeledSeed Atlas::follow_path(const std::vector<std::size_t>& path) const {
  LabeledSeed cur;
  cur.seed = 0;
  cur.position.resize(m());
  for (std::size_t i = 0; i < m(); ++i) cur.position[i] = i;
  for (std::size_t k : path) {
    if (k >= n()) throw InputError("mutation index out of range");
    const SeedRecord& s = seeds_[cur.seed];
    std::size_t sk = cur.position[k];
    const auto& pm = s.neighbor_position[sk];
    for (auto& p : cur.position) p = pm[p];
    cur.seed = s.neighbor[sk];
  }
  return cur;
}

std::size_t Atlas::variable_at(const LabeledSeed& s, std::size_t position) const {
  return seeds_.at(s.seed).cluster.at(s.position.at(position));
}

namespace {

int c_vector_sign(const IntMatrix& c, std::size_t k) {
  bool pos = false, neg = false;
  for (std::size_t j = 0; j < c.rows(); ++j) {
    if (c(j, k) > 0) pos = true;
    if (c(j, k) < 0) neg = true;
  }
  if (pos == neg) throw std::logic_error("c-vector is not sign-coherent");
  return pos ? 1 : -1;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  IntMatrix out = top;
  for (std::size_t i = 0; i < bottom.rows(); ++i) out.append_row(bottom.row(i));
  return out;
}

}  // namespace

std::pair<SparseMonomial, SparseMonomial> exchange_monomials(const Atlas& atlas, std::size_t seed,
                                                             std::size_t k) {
  const SeedRecord& s = atlas.seeds().at(seed);
  SparseMonomial plus, minus;
  for (std::size_t i = 0; i < atlas.m(); ++i) {
    Int b = s.matrix(i, k);
    if (b > 0) plus.emplace_back(s.cluster[i], b);
    if (b < 0) minus.emplace_back(s.cluster[i], -b);
  }
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  return {plus, minus};
}

Atlas enumerate(const Seed& seed, const AtlasOptions& opts) {
  const std::size_t n = seed.matrix.n(), m = seed.matrix.m();
  Atlas a;
  a.initial_ = seed;
  a.has_laurent_ = opts.laurent;

  std::vector<std::string> xnames = seed.var_ids;
  std::vector<bool> xinv(m, false);
  for (std::size_t i = 0; i < n; ++i) xinv[i] = true;
  std::vector<std::string> ynames;
  for (std::size_t j = 0; j < n; ++j) ynames.push_back("y" + std::to_string(j + 1));
  std::vector<std::string> pnames = xnames;
  pnames.insert(pnames.end(), ynames.begin(), ynames.end());
  std::vector<bool> pinv = xinv;
  pinv.resize(m + n, false);
  a.laurent_ring_ = make_ring(xnames, xinv);
  a.principal_ring_ = make_ring(pnames, pinv);
  a.y_ring_ = make_ring(ynames);

  for (std::size_t i = 0; i < m; ++i) {
    ClusterVariable v;
    v.id = i;
    v.name = seed.var_ids[i];
    v.g_vector.assign(m, 0);
    v.g_vector[i] = 1;
    v.frozen = i >= n;
    v.position = i;
    if (opts.laurent) {
      v.laurent = LaurentPoly::variable(a.laurent_ring_, i);
      v.principal = LaurentPoly::variable(a.principal_ring_, i);
      v.f_polynomial = LaurentPoly::constant(a.y_ring_, 1);
    }
    a.by_g_[v.g_vector] = i;
    a.variables_.push_back(std::move(v));
  }

  auto key_of = [&](const std::vector<std::size_t>& cluster) {
    std::vector<IntVec> key;
    for (std::size_t i = 0; i < n; ++i) key.push_back(a.variables_[cluster[i]].g_vector);
    std::sort(key.begin(), key.end());
    return key;
  };

  SeedRecord first;
  first.cluster.resize(m);
  for (std::size_t i = 0; i < m; ++i) first.cluster[i] = i;
  first.matrix = seed.matrix.entries();
  first.c_matrix = IntMatrix::identity(n);
  first.neighbor.assign(n, 0);
  first.neighbor_position.assign(n, {});
  std::map<std::vector<IntVec>, std::size_t> index;
  index[key_of(first.cluster)] = 0;
  a.seeds_.push_back(std::move(first));

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t si = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < n; ++k) {
      // Copies: seeds_ may reallocate below.
      const std::vector<std::size_t> cluster = a.seeds_[si].cluster;
      const IntMatrix bmat = a.seeds_[si].matrix;
      const IntMatrix cmat = a.seeds_[si].c_matrix;

      IntMatrix both = mutate_entries(stack(bmat, cmat), k);
      IntMatrix new_b(m, n), new_c(n, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) new_b(i, j) = both(i, j);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) new_c(i, j) = both(m + i, j);

      int eps = c_vector_sign(cmat, k);
      IntVec g(m, 0);
      for (std::size_t r = 0; r < m; ++r) g[r] = -a.variables_[cluster[k]].g_vector[r];
      for (std::size_t i = 0; i < m; ++i) {
        if (i == k) continue;
        Int coef = std::max<Int>(0, -eps * bmat(i, k));
        if (coef == 0) continue;
        const IntVec& gi = a.variables_[cluster[i]].g_vector;
        for (std::size_t r = 0; r < m; ++r) g[r] = checked_add(g[r], checked_mul(coef, gi[r]));
      }

      std::size_t new_id;
      if (auto found = a.find_by_g(g)) {
        new_id = *found;
      } else {
        ClusterVariable v;
        v.id = a.variables_.size();
        v.name = "v" + std::to_string(v.id);
        v.g_vector = g;
        v.path = a.seeds_[si].path;
        v.path.push_back(k);
        v.position = k;
        if (opts.laurent) {
          LaurentPoly plus = LaurentPoly::constant(a.principal_ring_, 1);
          LaurentPoly minus = plus;
          for (std::size_t i = 0; i < m; ++i) {
            Int b = bmat(i, k);
            if (b > 0) plus = plus * a.variables_[cluster[i]].principal->pow(static_cast<unsigned>(b));
            if (b < 0) minus = minus * a.variables_[cluster[i]].principal->pow(static_cast<unsigned>(-b));
          }
          IntVec yplus(m + n, 0), yminus(m + n, 0);
          for (std::size_t j = 0; j < n; ++j) {
            yplus[m + j] = std::max<Int>(0, cmat(j, k));
            yminus[m + j] = std::max<Int>(0, -cmat(j, k));
          }
          LaurentPoly num = plus.mul_monomial(yplus) + minus.mul_monomial(yminus);
          auto q = num.divide_exact(*a.variables_[cluster[k]].principal);
          if (!q) throw std::logic_error("exchange relation did not produce a Laurent polynomial");
          v.principal = *q;
          std::vector<LaurentPoly> at_y1, at_x1;
          for (std::size_t i = 0; i < m; ++i) {
            at_y1.push_back(LaurentPoly::variable(a.laurent_ring_, i));
            at_x1.push_back(LaurentPoly::constant(a.y_ring_, 1));
          }
          for (std::size_t j = 0; j < n; ++j) {
            at_y1.push_back(LaurentPoly::constant(a.laurent_ring_, 1));
            at_x1.push_back(LaurentPoly::variable(a.y_ring_, j));
          }
          v.laurent = q->substitute(at_y1);
          v.f_polynomial = q->substitute(at_x1);
        }
        new_id = v.id;
        a.by_g_[g] = new_id;
        a.variables_.push_back(std::move(v));
      }

      std::vector<std::size_t> new_cluster = cluster;
      new_cluster[k] = new_id;
      auto key = key_of(new_cluster);
      std::size_t target;
      auto it = index.find(key);
      if (it == index.end()) {
        if (a.seeds_.size() >= opts.max_seeds) throw BudgetError("enumeration budget exceeded");
        SeedRecord t;
        t.cluster = new_cluster;
        t.matrix = new_b;
        t.c_matrix = new_c;
        t.path = a.seeds_[si].path;
        t.path.push_back(k);
        t.neighbor.assign(n, 0);
        t.neighbor_position.assign(n, {});
        target = a.seeds_.size();
        index.emplace(std::move(key), target);
        a.seeds_.push_back(std::move(t));
        queue.push_back(target);
      } else {
        target = it->second;
      }

      const SeedRecord& t = a.seeds_[target];
      std::vector<std::size_t> pm(m);
      for (std::size_t i = 0; i < m; ++i) {
        auto pos = std::find(t.cluster.begin(), t.cluster.end(), new_cluster[i]);
        if (pos == t.cluster.end()) throw std::logic_error("seed identification failed");
        pm[i] = static_cast<std::size_t>(pos - t.cluster.begin());
      }
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (t.matrix(pm[i], pm[j]) != new_b(i, j))
            throw std::logic_error("same cluster reached with different exchange matrices");
      a.seeds_[si].neighbor[k] = target;
      a.seeds_[si].neighbor_position[k] = pm;

      auto [plus, minus] = exchange_monomials(a, si, k);
      std::pair<std::size_t, std::size_t> pk{std::min(cluster[k], new_id), std::max(cluster[k], new_id)};
      auto pit = a.pair_index_.find(pk);
      if (pit == a.pair_index_.end()) {
        ExchangePair p{pk.first, pk.second, plus, minus, si, k};
        a.pair_index_[pk] = a.pairs_.size();
        a.pairs_.push_back(std::move(p));
      } else {
        const ExchangePair& p = a.pairs_[pit->second];
        std::set<SparseMonomial> seen{p.plus, p.minus}, now{plus, minus};
        if (seen != now) throw std::logic_error("exchange relation differs between seeds");
      }
    }
  }
  return a;
}

const LaurentPoly& laurent_expansion(const Atlas& atlas, std::size_t id) {
  const auto& v = atlas.variable(id);
  if (!v.laurent) throw InputError("atlas was enumerated without Laurent expansions");
  return *v.laurent;
}

const IntVec& g_vector(const Atlas& atlas, std::size_t id) { return atlas.variable(id).g_vector; }

bool separation_holds(const Atlas& atlas, std::size_t id) {
  const auto& v = atlas.variable(id);
  if (!v.principal || !v.f_polynomial) throw InputError("atlas was enumerated without Laurent expansions");
  const std::size_t n = atlas.n(), m = atlas.m();
  const Ring& pr = *atlas.principal_ring();
  std::vector<bool> inv(m + n, false);
  for (std::size_t i = 0; i < m; ++i) inv[i] = true;
  RingPtr sep = make_ring(pr.names, inv);
  const IntMatrix& b = atlas.initial_seed().matrix.entries();
  std::vector<LaurentPoly> yhat;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(m + n, 0);
    for (std::size_t i = 0; i < m; ++i) e[i] = b(i, j);
    e[m + j] = 1;
    yhat.push_back(LaurentPoly::monomial(sep, e));
  }
  IntVec xg(m + n, 0);
  for (std::size_t i = 0; i < m; ++i) xg[i] = v.g_vector[i];
  LaurentPoly rhs = v.f_polynomial->substitute(yhat).mul_monomial(xg);
  return rhs == v.principal->with_ring(sep);
}

IntVec tropical_g_vector(const Atlas& atlas, std::size_t id) {
  const auto& v = atlas.variable(id);
  if (!v.f_polynomial) throw InputError("atlas was enumerated without Laurent expansions");
  const std::size_t n = atlas.n(), m = atlas.m();
  const IntMatrix& b = atlas.initial_seed().matrix.entries();
  const auto& terms = v.f_polynomial->terms();
  IntVec g(m, 0);
  if (id < m) {
    // F = 1; the formula does not apply to initial and frozen variables.
    g[id] = 1;
    return g;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Int mx = 0;
    for (const auto& [e, c] : terms) mx = std::max(mx, e[j]);
    g[j] = -mx;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Int mn = 0;
    bool first = true;
    for (const auto& [e, c] : terms) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s = checked_add(s, checked_mul(e[j], b(i, j)));
      mn = first ? s : std::min(mn, s);
      first = false;
    }
    g[i] = checked_add(g[i], -mn);
  }
  return g;
}

std::pair<LaurentPoly, IntVec> split_laurent(const LaurentPoly& f) {
  const std::size_t n = f.ring()->size();
  IntVec den(n, 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < n; ++i) den[i] = std::max(den[i], -e[i]);
  std::vector<bool> none(n, false);
  RingPtr poly = make_ring(f.ring()->names, none);
  LaurentPoly num(poly);
  IntVec shifted(n);
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) shifted[i] = e[i] + den[i];
    num.add_term(shifted, c);
  }
  return {num, den};
}

FiniteTypeResult classify_mutation_class(const Atlas& atlas) {
  FiniteTypeResult first;
  for (std::size_t s = 0; s < atlas.seeds().size(); ++s) {
    ExchangeMatrix b(atlas.seeds()[s].matrix, atlas.n(), atlas.initial_seed().matrix.symmetrizer());
    FiniteTypeResult r = classify_finite_type(b);
    if (r.finite) return r;
    if (s == 0) first = r;
  }
  return first;
}

}  // namespace cdf
