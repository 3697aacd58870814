#include "cdf/universal.hpp"

#include <algorithm>

#include "cdf/errors.hpp"

namespace cdf {

bool RelationSide::frozen_only(const Atlas& base) const {
  for (std::size_t id = 0; id < z.size(); ++id)
    if (z[id] != 0 && !base.variable(id).frozen) return false;
  return true;
}

namespace {

bool is_unit(const IntVec& t, std::size_t& index) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    if (t[i] != 1) return false;
    index = i;
    ++count;
  }
  return count == 1;
}

}  // namespace

UniversalData build_universal(const Atlas& base, std::size_t max_seeds) {
  UniversalData u{base, {}, {}, {}};
  const ExchangeMatrix& b = base.initial_seed().matrix;
  const std::size_t n = b.n(), m = b.m();

  Atlas dual = enumerate(make_seed(b.transpose_principal()), AtlasOptions{max_seeds, false});
  std::vector<IntVec> rows;
  for (auto id : dual.mutable_ids()) rows.push_back(g_vector(dual, id));
  std::sort(rows.begin(), rows.end());
  const std::size_t p = rows.size();
  u.u_rows = IntMatrix::from_rows(rows, n);

  Atlas univ = enumerate(make_seed(b.append_rows(rows)), AtlasOptions{max_seeds, false});
  // Identify variables of the universal atlas with base variables by the first m g-vector entries.
  std::vector<std::optional<std::size_t>> to_base(univ.variables().size());
  std::vector<std::optional<std::size_t>> to_t(univ.variables().size());
  for (const auto& v : univ.variables()) {
    if (v.id >= m && v.id < m + p) {
      to_t[v.id] = v.id - m;
      continue;
    }
    IntVec g(v.g_vector.begin(), v.g_vector.begin() + static_cast<std::ptrdiff_t>(m));
    auto id = base.find_by_g(g);
    if (!id) throw std::logic_error("universal variable without a base counterpart");
    to_base[v.id] = *id;
  }
  if (univ.exchange_pairs().size() != base.exchange_pairs().size())
    throw std::logic_error("exchange graphs of base and universal algebra differ");

  const std::size_t nz = base.variables().size();
  auto side = [&](const SparseMonomial& mono) {
    RelationSide s{IntVec(nz, 0), IntVec(p, 0)};
    for (auto [id, e] : mono) {
      if (to_t[id]) s.t[*to_t[id]] += e;
      else s.z[*to_base[id]] += e;
    }
    return s;
  };
  u.owners.assign(p, {});
  for (const auto& pair : univ.exchange_pairs()) {
    UniversalRelation r;
    r.v = *to_base[pair.v];
    r.w = *to_base[pair.w];
    if (r.v > r.w) std::swap(r.v, r.w);
    r.plus = side(pair.plus);
    r.minus = side(pair.minus);
    std::size_t i = 0;
    if (r.minus.frozen_only(base) && is_unit(r.plus.t, i)) r.owned_plus.push_back(i);
    if (r.plus.frozen_only(base) && is_unit(r.minus.t, i)) r.owned_minus.push_back(i);
    const std::size_t index = u.relations.size();
    for (auto t : r.owned_plus) u.owners[t].emplace_back(index, 1);
    for (auto t : r.owned_minus) u.owners[t].emplace_back(index, -1);
    u.relations.push_back(std::move(r));
  }
  return u;
}

bool has_degenerate_vertex(const ExchangeMatrix& b) {
  for (std::size_t k = 0; k < b.n(); ++k) {
    bool zero = true;
    for (std::size_t i = 0; i < b.m() && zero; ++i) zero = b(i, k) == 0;
    if (zero) return true;
  }
  return false;
}

std::vector<IntVec> t_degrees(const UniversalData& u) {
  if (has_degenerate_vertex(u.base.initial_seed().matrix))
    throw InputError("isolated vertex without frozen neighbours: characteristic map is degenerate");
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < u.p(); ++i) {
    if (u.owners[i].empty()) throw std::logic_error("coefficient without an owning relation");
    auto [index, sign] = u.owners[i].front();
    const UniversalRelation& r = u.relations[index];
    const RelationSide& s = sign > 0 ? r.plus : r.minus;
    IntVec d(u.num_z(), 0);
    d[r.v] += 1;
    d[r.w] += 1;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= s.z[k];
    out.push_back(std::move(d));
  }
  return out;
}

MonomialIdeal join_ideal(const Atlas& base) {
  MonomialIdeal j = sr_ideal(cluster_complex(base), base.frozen_ids());
  // Re-index exponent vectors by variable id.
  MonomialIdeal out;
  for (std::size_t id = 0; id < base.variables().size(); ++id) out.variables.push_back(id);
  for (const auto& g : j.generators) {
    IntVec e(base.variables().size(), 0);
    for (std::size_t c = 0; c < g.size(); ++c) e[j.variables[c]] = g[c];
    out.generators.push_back(std::move(e));
  }
  std::sort(out.generators.begin(), out.generators.end(), std::greater<>());
  return out;
}

FiberAtZero fiber_at_zero(const UniversalData& u, const MonomialIdeal& j) {
  FiberAtZero out;
  out.all_generators = true;
  out.both_sides_vanish = true;
  for (const auto& r : u.relations) {
    IntVec e(u.num_z(), 0);
    e[r.v] += 1;
    e[r.w] += 1;
    auto nonzero_t = [](const IntVec& t) { return std::any_of(t.begin(), t.end(), [](Int x) { return x != 0; }); };
    if (!nonzero_t(r.plus.t) || !nonzero_t(r.minus.t)) out.both_sides_vanish = false;
    if (std::find(j.generators.begin(), j.generators.end(), e) == j.generators.end()) out.all_generators = false;
    out.monomials.push_back(std::move(e));
  }
  return out;
}

}  // namespace cdf
