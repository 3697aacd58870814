#include "cdf/deform.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cdf/errors.hpp"
#include "cdf/groebner.hpp"
#include "cdf/lattice.hpp"

namespace cdf {

IntVec DeformationFamily::t_degree(const IntVec& exponent) const {
  IntVec out(exponent.begin(), exponent.begin() + static_cast<std::ptrdiff_t>(num_z));
  for (std::size_t i = 0; i < num_t; ++i) {
    const Int e = exponent[num_z + i];
    if (e == 0) continue;
    for (std::size_t v = 0; v < num_z; ++v) out[v] = checked_add(out[v], checked_mul(e, t_degrees[i][v]));
  }
  return out;
}

Int DeformationFamily::t_order(const IntVec& exponent) const {
  Int s = 0;
  for (std::size_t i = 0; i < num_t; ++i) s += exponent[num_z + i];
  return s;
}

namespace {

IntVec z_part(const DeformationFamily& f, const IntVec& e) {
  return IntVec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(f.num_z));
}

IntVec extend(const DeformationFamily& f, const IntVec& z) {
  IntVec e = z;
  e.resize(f.num_z + f.num_t, 0);
  return e;
}

bool standard(const DeformationFamily& f, const IntVec& e) { return !f.order_zero.contains(z_part(f, e)); }

// Pairs of generators whose leading monomials share a variable.
std::vector<std::pair<std::size_t, std::size_t>> critical_pairs(const DeformationFamily& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < f.leading.size(); ++i)
    for (std::size_t j = i + 1; j < f.leading.size(); ++j) {
      bool shared = false;
      for (std::size_t v = 0; v < f.num_z && !shared; ++v) shared = f.leading[i][v] > 0 && f.leading[j][v] > 0;
      if (shared) out.emplace_back(i, j);
    }
  return out;
}

// Cofactors with lcm = cof_i * lead_i = cof_j * lead_j, as full ring exponents.
std::pair<IntVec, IntVec> cofactors(const DeformationFamily& f, std::size_t i, std::size_t j) {
  IntVec l = lcm(f.leading[i], f.leading[j]);
  IntVec a(l.size()), b(l.size());
  for (std::size_t v = 0; v < l.size(); ++v) {
    a[v] = l[v] - f.leading[i][v];
    b[v] = l[v] - f.leading[j][v];
  }
  return {extend(f, a), extend(f, b)};
}

LaurentPoly s_pair(const DeformationFamily& f, std::size_t i, std::size_t j) {
  auto [a, b] = cofactors(f, i, j);
  return f.generators[i].mul_monomial(a) - f.generators[j].mul_monomial(b);
}

// Standard monomials t^beta z^gamma with |beta| = k and the T-degree of lead.
std::vector<IntVec> candidates(const DeformationFamily& f, const IntVec& lead, std::size_t k) {
  std::vector<Int> cost(f.num_t);
  for (std::size_t i = 0; i < f.num_t; ++i) {
    cost[i] = dot(f.weight, f.t_degrees[i]);
    if (cost[i] < 1) throw std::logic_error("Groebner weight does not separate a coefficient");
  }
  const Int budget = dot(f.weight, lead);
  std::vector<IntVec> out;
  IntVec beta(f.num_t, 0);
  std::function<void(std::size_t, std::size_t, Int)> rec = [&](std::size_t i, std::size_t left, Int spent) {
    if (left == 0) {
      IntVec e = extend(f, lead);
      for (std::size_t s = 0; s < f.num_t; ++s) {
        e[f.num_z + s] = beta[s];
        for (std::size_t v = 0; v < f.num_z; ++v) e[v] -= beta[s] * f.t_degrees[s][v];
      }
      for (std::size_t v = 0; v < f.num_z; ++v)
        if (e[v] < 0) return;
      if (standard(f, e)) out.push_back(std::move(e));
      return;
    }
    if (i == f.num_t) return;
    for (Int c = 0; c <= static_cast<Int>(left) && spent + c * cost[i] <= budget; ++c) {
      beta[i] = c;
      rec(i + 1, left - static_cast<std::size_t>(c), spent + c * cost[i]);
    }
    beta[i] = 0;
  };
  rec(0, k, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Nonzeros on exchangeable generators, then on the others.
std::pair<std::size_t, std::size_t> support_key(const QVec& c, const std::vector<bool>& exch) {
  std::pair<std::size_t, std::size_t> key{0, 0};
  for (std::size_t u = 0; u < c.size(); ++u)
    if (c[u] != 0) ++(exch[u] ? key.first : key.second);
  return key;
}

void lift_step(DeformationFamily& f, std::size_t k) {
  const auto pairs = critical_pairs(f);
  std::vector<bool> mask(f.num_z + f.num_t, false);
  for (std::size_t i = 0; i < f.num_t; ++i) mask[f.num_z + i] = true;
  const Truncation trunc{mask, static_cast<Int>(k)};

  std::map<std::pair<std::size_t, IntVec>, std::size_t> rows;
  auto row_of = [&](std::size_t pair, const IntVec& e) {
    auto [it, ins] = rows.try_emplace({pair, e}, rows.size());
    return it->second;
  };
  std::vector<std::pair<std::size_t, mpq_class>> rhs_entries;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    LaurentPoly r = normal_form(s_pair(f, pairs[p].first, pairs[p].second), f.generators, f.ordering, trunc);
    for (const auto& [e, c] : r.terms()) {
      if (f.t_order(e) < static_cast<Int>(k)) throw std::logic_error("family is not flat below the current order");
      rhs_entries.emplace_back(row_of(p, e), -c);
    }
  }

  struct Unknown {
    std::size_t gen;
    IntVec mono;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t g = 0; g < f.generators.size(); ++g)
    for (auto& e : candidates(f, f.leading[g], k)) unknowns.push_back({g, std::move(e)});

  std::vector<std::tuple<std::size_t, std::size_t, int>> entries;  // row, unknown, sign
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      if (unknowns[u].gen != i && unknowns[u].gen != j) continue;
      auto [a, b] = cofactors(f, i, j);
      const IntVec& cof = unknowns[u].gen == i ? a : b;
      IntVec e = unknowns[u].mono;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += cof[v];
      if (!standard(f, e)) continue;
      entries.emplace_back(row_of(p, e), u, unknowns[u].gen == i ? 1 : -1);
    }

  OrderStats st;
  st.order = k;
  st.unknowns = unknowns.size();
  st.equations = rows.size();
  QMatrix a(rows.size(), unknowns.size());
  QVec rhs(rows.size(), 0);
  for (auto [r, u, s] : entries) a(r, u) += s;
  for (const auto& [r, c] : rhs_entries) rhs[r] += c;
  auto sol = solve_affine(a, rhs);
  if (!sol) throw ObstructedError("obstructed at order " + std::to_string(k));
  st.nullity = sol->nullspace.size();
  std::vector<bool> exch;
  for (const auto& u : unknowns) exch.push_back(f.exchangeable[u.gen]);
  MinimalChoice choice = exchange_minimal(*sol, exch);
  st.tie_broken = choice.tie;
  st.greedy = choice.greedy;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (choice.values[u] == 0) continue;
    f.generators[unknowns[u].gen].add_term(unknowns[u].mono, choice.values[u]);
    ++st.corrections;
  }
  f.order = k;
  f.stats.push_back(st);
}

}  // namespace

// Adding vanishing coordinates never increases either support count, so an optimum is
// attained where d independent coordinates vanish.
MinimalChoice exchange_minimal(const AffineSolution& sol, const std::vector<bool>& exch) {
  const std::size_t n = sol.particular.size(), d = sol.nullspace.size();
  MinimalChoice out;
  if (d == 0) {
    out.values = sol.particular;
    return out;
  }
  std::vector<std::size_t> moving;
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& v : sol.nullspace)
      if (v[u] != 0) {
        moving.push_back(u);
        break;
      }
  auto point = [&](const std::vector<std::size_t>& zeros) -> std::optional<QVec> {
    QMatrix a(zeros.size(), d);
    QVec rhs(zeros.size());
    for (std::size_t r = 0; r < zeros.size(); ++r) {
      for (std::size_t c = 0; c < d; ++c) a(r, c) = sol.nullspace[c][zeros[r]];
      rhs[r] = -sol.particular[zeros[r]];
    }
    auto y = solve_affine(a, rhs);
    if (!y) return std::nullopt;
    QVec c = sol.particular;
    for (std::size_t s = 0; s < d; ++s)
      if (y->particular[s] != 0)
        for (std::size_t u = 0; u < n; ++u) c[u] += y->particular[s] * sol.nullspace[s][u];
    return c;
  };
  double combos = 1;
  for (std::size_t s = 0; s < d; ++s) combos = combos * static_cast<double>(moving.size() - s) / static_cast<double>(s + 1);
  std::optional<QVec> best;
  if (combos <= 2e5) {
    std::vector<std::size_t> pick(d);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t depth) {
      if (depth == d) {
        std::vector<std::size_t> zeros;
        for (auto s : pick) zeros.push_back(moving[s]);
        QMatrix a(d, d);
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) a(r, c) = sol.nullspace[c][zeros[r]];
        if (rank(a) < d) return;
        auto c = point(zeros);
        if (!c) return;
        if (!best) {
          best = std::move(c);
          return;
        }
        const auto kc = support_key(*c, exch), kb = support_key(*best, exch);
        if (kc < kb) {
          out.tie = false;
          best = std::move(c);
        } else if (kc == kb && *c != *best) {
          out.tie = true;
          if (*c < *best) best = std::move(c);
        }
        return;
      }
      for (std::size_t s = from; s + (d - depth) <= moving.size(); ++s) {
        pick[depth] = s;
        rec(s + 1, depth + 1);
      }
    };
    rec(0, 0);
  } else {
    out.greedy = true;
    std::vector<std::size_t> order = moving, zeros;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exch[a] && !exch[b]; });
    for (auto u : order) {
      zeros.push_back(u);
      if (!point(zeros)) zeros.pop_back();
    }
    best = point(zeros);
  }
  if (!best) throw std::logic_error("no vertex in the solution space");
  out.values = std::move(*best);
  return out;
}

DeformationFamily first_order(const UniversalData& u) {
  if (has_degenerate_vertex(u.base.initial_seed().matrix))
    throw InputError("isolated vertex without frozen neighbours: no first-order data");
  DeformationFamily f;
  f.num_z = u.num_z();
  f.num_t = u.p();
  f.t_degrees = t_degrees(u);
  f.weight = groebner_cone(u).interior_weight;
  IntVec w = f.weight;
  w.resize(f.num_z + f.num_t, 0);
  f.ordering = MonomialOrder(w);
  f.order_zero = join_ideal(u.base);
  std::vector<std::string> names;
  for (const auto& v : u.base.variables()) names.push_back(v.name);
  for (std::size_t i = 0; i < f.num_t; ++i) names.push_back("t" + std::to_string(i + 1));
  f.ring = make_ring(names);
  for (const auto& g : f.order_zero.generators) {
    IntVec lead(f.num_z, 0);
    for (std::size_t c = 0; c < g.size(); ++c) lead[f.order_zero.variables[c]] = g[c];
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < f.num_z; ++v)
      if (lead[v]) support.push_back(v);
    std::pair<std::size_t, std::size_t> pr{support.front(), support.back()};
    f.generators.push_back(LaurentPoly::monomial(f.ring, extend(f, lead)));
    f.exchangeable.push_back(support.size() == 2 && u.base.find_pair(pr.first, pr.second).has_value());
    f.pairs.push_back(pr);
    f.leading.push_back(std::move(lead));
  }
  for (std::size_t i = 0; i < f.num_t; ++i) {
    if (u.owners[i].empty()) throw std::logic_error("coefficient without an owning relation");
    auto [index, sign] = u.owners[i].front();
    const UniversalRelation& r = u.relations[index];
    IntVec lead(f.num_z, 0);
    lead[r.v] += 1;
    lead[r.w] += 1;
    auto it = std::find(f.leading.begin(), f.leading.end(), lead);
    if (it == f.leading.end()) throw std::logic_error("exchange monomial is not a generator of J");
    IntVec e = extend(f, sign > 0 ? r.plus.z : r.minus.z);
    e[f.num_z + i] = 1;
    f.generators[static_cast<std::size_t>(it - f.leading.begin())].add_term(e, -1);
  }
  f.order = 1;
  return f;
}

bool is_flat(const DeformationFamily& f) {
  for (auto [i, j] : critical_pairs(f))
    if (!normal_form(s_pair(f, i, j), f.generators, f.ordering).is_zero()) return false;
  return true;
}

DeformationFamily lift(DeformationFamily family, std::size_t max_order) {
  while (!is_flat(family)) {
    const std::size_t k = family.order + 1;
    if (k > max_order) throw BudgetError("order budget exceeded");
    lift_step(family, k);
  }
  return family;
}

FamilyReport verify_family(const DeformationFamily& f, const UniversalData& u) {
  FamilyReport rep;
  const Atlas& base = u.base;

  std::vector<IntVec> fiber;
  rep.equivariant_ok = rep.leading_ok = true;
  for (std::size_t g = 0; g < f.generators.size(); ++g) {
    const LaurentPoly& gen = f.generators[g];
    for (const auto& [e, c] : gen.terms()) {
      if (f.t_order(e) == 0) fiber.push_back(z_part(f, e));
      if (f.t_degree(e) != f.leading[g]) {
        rep.equivariant_ok = false;
        rep.failures.push_back("generator " + std::to_string(g + 1) + " is not T-homogeneous");
      }
    }
    auto [le, lc] = leading_term(gen, f.ordering);
    if (z_part(f, le) != f.leading[g] || lc != 1 || f.t_order(le) != 0) {
      rep.leading_ok = false;
      rep.failures.push_back("generator " + std::to_string(g + 1) + " has the wrong leading term");
    }
  }
  std::vector<IntVec> expected;
  for (const auto& g : f.order_zero.generators) {
    IntVec e(f.num_z, 0);
    for (std::size_t c = 0; c < g.size(); ++c) e[f.order_zero.variables[c]] = g[c];
    expected.push_back(std::move(e));
  }
  std::sort(fiber.begin(), fiber.end());
  std::sort(expected.begin(), expected.end());
  rep.fiber_ok = fiber == expected;
  if (!rep.fiber_ok) rep.failures.push_back("t = 0 fiber differs from J");

  rep.laurent_ok = base.has_laurent();
  if (!rep.laurent_ok) rep.failures.push_back("atlas has no Laurent expansions");
  if (rep.laurent_ok) {
    std::vector<LaurentPoly> images;
    for (std::size_t id = 0; id < f.num_z; ++id) images.push_back(laurent_expansion(base, id));
    for (std::size_t i = 0; i < f.num_t; ++i) images.push_back(LaurentPoly::constant(base.laurent_ring(), 1));
    for (std::size_t g = 0; g < f.generators.size(); ++g)
      if (!f.generators[g].substitute(images).is_zero()) {
        rep.laurent_ok = false;
        rep.failures.push_back("generator " + std::to_string(g + 1) + " does not vanish at t = 1");
      }
  }

  rep.exchange_ok = true;
  std::vector<bool> matched(f.generators.size(), false);
  for (const auto& r : u.relations) {
    IntVec lead(f.num_z, 0);
    lead[r.v] += 1;
    lead[r.w] += 1;
    auto it = std::find(f.leading.begin(), f.leading.end(), lead);
    if (it == f.leading.end()) {
      rep.exchange_ok = false;
      rep.failures.push_back("exchange pair without a generator");
      continue;
    }
    const std::size_t g = static_cast<std::size_t>(it - f.leading.begin());
    matched[g] = true;
    LaurentPoly want = LaurentPoly::monomial(f.ring, extend(f, lead));
    for (const RelationSide* side : {&r.plus, &r.minus}) {
      IntVec e = extend(f, side->z);
      for (std::size_t i = 0; i < f.num_t; ++i) e[f.num_z + i] = side->t[i];
      want.add_term(e, -1);
    }
    ++rep.exchange_checked;
    if (!(want == f.generators[g])) {
      rep.exchange_ok = false;
      rep.failures.push_back("generator " + std::to_string(g + 1) + " differs from its universal exchange relation");
    }
  }
  rep.extra_relations = static_cast<std::size_t>(std::count(matched.begin(), matched.end(), false));
  return rep;
}

}  // namespace cdf
