#include "cdf/properties.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "cdf/cotangent.hpp"
#include "cdf/errors.hpp"
#include "cdf/lattice.hpp"
#include "cdf/lp.hpp"

namespace cdf {

std::string property_name(Property p) {
  switch (p) {
    case Property::t0: return "T0";
    case Property::t0_star: return "T0*";
    case Property::t1: return "T1";
  }
  return "";
}

namespace {

std::vector<T1Witness> t1_witnesses_at(const Atlas& atlas, std::size_t si, const std::optional<IntVec>& grading,
                                       std::optional<Int> bound) {
  const SeedRecord& s = atlas.seeds()[si];
  const std::size_t n = atlas.n(), m = atlas.m();
  std::optional<IntVec> deg;
  if (grading) deg = seed_degrees(atlas, si, *grading);
  std::vector<T1Witness> out;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec neg(m);
    for (std::size_t i = 0; i < m; ++i) neg[i] = -s.matrix(i, j);
    for (auto& w : t1_solutions(s.matrix, n, j, deg, bound)) {
      if (w == neg || std::all_of(w.begin(), w.end(), [](Int x) { return x == 0; })) continue;
      auto lambda = lattice_coordinates(w, s.matrix);
      if (!lambda) throw std::logic_error("T1 solution outside the column span");
      out.push_back(T1Witness{si, j, s.matrix, std::move(w), std::move(*lambda)});
    }
  }
  return out;
}

// Exponent vector over atlas ids mapped onto the slots of j.
IntVec to_slots(const MonomialIdeal& j, const IntVec& e) {
  IntVec out(j.variables.size(), 0);
  for (std::size_t c = 0; c < j.variables.size(); ++c)
    if (j.variables[c] < e.size()) out[c] = e[j.variables[c]];
  return out;
}

bool ideal_contains(const MonomialIdeal& j, const IntVec& e) { return j.contains(to_slots(j, e)); }

IntVec unit(std::size_t size, std::size_t i) {
  IntVec e(size, 0);
  e[i] = 1;
  return e;
}

// Calls visit on every exponent vector alpha with sum alpha_i weight_i == target.
void for_each_weighted(const IntVec& weight, Int target, const std::function<void(const IntVec&)>& visit) {
  IntVec alpha(weight.size(), 0);
  std::size_t count = 0;
  std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int rest) {
    if (rest == 0) {
      if (++count > 5000000) throw BudgetError("monomial enumeration budget exceeded");
      visit(alpha);
      return;
    }
    if (i == weight.size()) return;
    for (Int c = 0; c * weight[i] <= rest; ++c) {
      alpha[i] = c;
      rec(i + 1, rest - c * weight[i]);
    }
    alpha[i] = 0;
  };
  rec(0, target);
}

// Depth-first search over generator multiplicities, bounded by the positive functional.
class SemigroupSearch {
public:
  explicit SemigroupSearch(const SemigroupData& s) : u_(s.positive_functional) {
    for (const auto& g : s.generators)
      if (std::any_of(g.begin(), g.end(), [](Int x) { return x != 0; })) gens_.push_back(g);
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    for (const auto& g : gens_) cost_.push_back(pair(g));
  }

  bool member(const IntVec& target) {
    if (target.size() != u_.size()) throw InputError("semigroup target has the wrong length");
    failed_.clear();
    return dfs(0, target);
  }

private:
  Int pair(const IntVec& x) const {
    Int r = 0;
    for (std::size_t i = 0; i < u_.size(); ++i) r = checked_add(r, checked_mul(u_[i], x[i]));
    return r;
  }

  bool dfs(std::size_t i, const IntVec& rest) {
    if (std::all_of(rest.begin(), rest.end(), [](Int x) { return x == 0; })) return true;
    const Int budget = pair(rest);
    if (i == gens_.size() || budget < 1) return false;
    if (failed_.count({i, rest})) return false;
    IntVec cur = rest;
    for (Int c = 0; c * cost_[i] <= budget; ++c) {
      if (dfs(i + 1, cur)) return true;
      for (std::size_t l = 0; l < cur.size(); ++l) cur[l] = checked_add(cur[l], -gens_[i][l]);
    }
    failed_.insert({i, rest});
    return false;
  }

  IntVec u_;
  std::vector<IntVec> gens_;
  std::vector<Int> cost_;
  std::set<std::pair<std::size_t, IntVec>> failed_;
};

HDegree monomial_degree(const GradingData& gd, const std::vector<HDegree>& deg, const IntVec& alpha) {
  HDegree d = gd.zero();
  for (std::size_t v = 0; v < alpha.size(); ++v)
    for (Int c = 0; c < alpha[v]; ++c) d = gd.add(d, deg[v]);
  return d;
}

std::vector<HDegree> variable_degrees(const GradingData& gd, const Atlas& atlas) {
  std::vector<HDegree> out;
  for (std::size_t id = 0; id < atlas.variables().size(); ++id) out.push_back(variable_degree(gd, atlas, id));
  return out;
}

}  // namespace

PropertyReport check_t1(const Atlas& atlas, const std::optional<IntVec>& grading, std::optional<Int> bound,
                        std::size_t threads) {
  std::optional<IntVec> d = grading;
  if (!d && !bound) {
    d = find_strictly_positive_grading(atlas);
    if (!d) throw InputError("no strictly positive grading exists; supply a bound");
  }
  const std::size_t count = atlas.seeds().size();
  std::vector<std::vector<T1Witness>> per_seed(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t si = 0; si < count; ++si) per_seed[si] = t1_witnesses_at(atlas, si, d, bound);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t si = t; si < count; si += threads) per_seed[si] = t1_witnesses_at(atlas, si, d, bound);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  PropertyReport out;
  out.property = Property::t1;
  out.matrices_checked = count;
  for (auto& v : per_seed)
    for (auto& w : v) out.t1_witnesses.push_back(std::move(w));
  out.holds = out.t1_witnesses.empty();
  return out;
}

IntVec repair_row(const T1Witness& witness) {
  IntVec row(witness.matrix.cols(), 0);
  for (std::size_t k = 0; k < witness.lambda.size(); ++k) {
    if (k == witness.j || witness.lambda[k] == 0) continue;
    row[k] = witness.lambda[k] > 0 ? -1 : 1;
    return row;
  }
  throw std::logic_error("T1 witness is a multiple of its own column");
}

Seed repair_t1(const Seed& seed, std::size_t max_seeds) {
  if (!rank_flags(seed.matrix).full_rank) throw InputError("T1 repair needs a full rank exchange matrix");
  const AtlasOptions opts{max_seeds, false};
  Seed cur = seed;
  Atlas atlas = enumerate(cur, opts);
  auto grading = find_strictly_positive_grading(atlas);
  auto restore_positivity = [&] {
    cur = add_frozen_for_positivity(cur, max_seeds);
    atlas = enumerate(cur, opts);
    grading = find_strictly_positive_grading(atlas);
    if (!grading) throw std::logic_error("positivity rows did not give a strictly positive grading");
  };
  if (!grading) restore_positivity();
  for (std::size_t added = 0;; ++added) {
    PropertyReport rep = check_t1(atlas, grading);
    if (rep.holds) break;
    if (added > 4 * cur.matrix.m() + 64) throw BudgetError("T1 repair did not terminate");
    const T1Witness& wit = rep.t1_witnesses.front();
    IntMatrix ext = wit.matrix;
    ext.append_row(repair_row(wit));
    const auto& path = atlas.seeds()[wit.seed].path;
    for (auto it = path.rbegin(); it != path.rend(); ++it) ext = mutate_entries(ext, *it);
    const std::size_t m = cur.matrix.m();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < ext.cols(); ++c)
        if (ext(i, c) != cur.matrix(i, c)) throw std::logic_error("transported matrix does not match the initial seed");
    IntVec row(ext.cols());
    for (std::size_t c = 0; c < ext.cols(); ++c) row[c] = ext(m, c);
    std::vector<std::string> labels = cur.var_ids;
    std::string l = "r" + std::to_string(added + 1);
    while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
    labels.push_back(l);
    std::optional<IntMatrix> g;
    if (cur.grading) {
      g = *cur.grading;
      g->append_row(IntVec(g->cols(), 0));
    }
    cur = make_seed(cur.matrix.append_rows({row}), std::move(labels), std::move(g));
    atlas = enumerate(cur, opts);
    grading = find_strictly_positive_grading(atlas);
    if (!grading) restore_positivity();
  }
  return cur;
}

IntVec strict_weights(const Atlas& atlas, const IntVec& grading) {
  const std::size_t m = atlas.m();
  if (grading.size() != m) throw InputError("grading needs one entry per initial variable");
  IntMatrix d(m, 1);
  for (std::size_t i = 0; i < m; ++i) d(i, 0) = grading[i];
  if (!is_graded(atlas.initial_seed().matrix, d)) throw InputError("grading does not satisfy B^T D = 0");
  IntVec out;
  for (const auto& v : atlas.variables()) {
    Int s = 0;
    for (std::size_t i = 0; i < m; ++i) s = checked_add(s, checked_mul(v.g_vector[i], grading[i]));
    if (s < 1) throw InputError("grading is not strictly positive");
    out.push_back(s);
  }
  return out;
}

DerivationProbe probe_derivation(const Atlas& atlas, const MonomialIdeal& j, std::size_t v, const IntVec& alpha) {
  const std::size_t nz = atlas.variables().size();
  if (v >= nz || alpha.size() != nz) throw InputError("derivation outside the atlas");
  DerivationProbe p;
  p.v = v;
  p.alpha = alpha;
  for (std::size_t w = 0; w < nz; ++w) {
    IntVec pair = unit(nz, v);
    pair[w] += 1;
    if (w == v || !ideal_contains(j, pair)) continue;
    IntVec moved = alpha;
    moved[w] += 1;
    if (ideal_contains(j, moved)) continue;
    const bool exch = atlas.find_pair(v, w).has_value();
    if (!p.j_nontrivial || (exch && !p.exchangeable)) p.witness_w = w;
    p.j_nontrivial = true;
    p.exchangeable = p.exchangeable || exch;
  }
  return p;
}

PropertyReport check_t0(const Atlas& atlas, const MonomialIdeal& j, const GradingData& gd, const IntVec& grading) {
  const IntVec weight = strict_weights(atlas, grading);
  const std::size_t nz = weight.size();
  const std::vector<HDegree> deg = variable_degrees(gd, atlas);
  // Generators containing each variable, with the variable removed.
  std::vector<std::vector<IntVec>> quotients(nz);
  for (const auto& g : j.generators) {
    IntVec e(nz, 0);
    for (std::size_t c = 0; c < g.size(); ++c)
      if (j.variables[c] < nz) e[j.variables[c]] = g[c];
    for (std::size_t i = 0; i < nz; ++i)
      if (e[i] > 0) {
        IntVec q = e;
        q[i] -= 1;
        quotients[i].push_back(std::move(q));
      }
  }
  PropertyReport out;
  out.property = Property::t0;
  for (std::size_t i = 0; i < nz; ++i) {
    if (quotients[i].empty()) continue;
    for_each_weighted(weight, weight[i], [&](const IntVec& alpha) {
      if (alpha == unit(nz, i)) return;
      if (monomial_degree(gd, deg, alpha) != deg[i]) return;
      for (const auto& q : quotients[i]) {
        IntVec prod = alpha;
        for (std::size_t v = 0; v < nz; ++v) prod[v] += q[v];
        if (ideal_contains(j, prod)) continue;
        DerivationProbe p;
        p.v = i;
        p.alpha = alpha;
        p.j_nontrivial = true;
        if (std::count(q.begin(), q.end(), 1) == 1 && std::accumulate(q.begin(), q.end(), Int{0}) == 1) {
          std::size_t w = static_cast<std::size_t>(std::find(q.begin(), q.end(), 1) - q.begin());
          p.witness_w = w;
          p.exchangeable = atlas.find_pair(i, w).has_value();
        }
        out.derivation_witnesses.push_back(std::move(p));
        break;
      }
    });
  }
  out.holds = out.derivation_witnesses.empty();
  return out;
}

SemigroupData make_semigroup(const UniversalData& u) {
  SemigroupData s;
  for (auto& d : t_degrees(u)) {
    for (auto& x : d) x = -x;
    s.generators.push_back(std::move(d));
  }
  const std::size_t nz = u.num_z();
  LinearProgram lp;
  lp.num_vars = nz;
  lp.objective.assign(nz, 0);
  for (const auto& g : s.generators) {
    if (std::all_of(g.begin(), g.end(), [](Int x) { return x == 0; })) continue;
    QVec row(nz);
    for (std::size_t i = 0; i < nz; ++i) {
      row[i] = g[i];
      lp.objective[i] += g[i];
    }
    lp.at_least.emplace_back(row, 1);
  }
  auto sol = solve_lp(lp);
  if (!sol) throw std::runtime_error("semigroup generators do not span a pointed cone");
  ZVec z = clear_denominators(*sol);
  for (const auto& x : z) s.positive_functional.push_back(to_int(x));
  return s;
}

bool in_semigroup(const SemigroupData& s, const IntVec& target) { return SemigroupSearch(s).member(target); }

PropertyReport check_t0_star(const Atlas& atlas, const MonomialIdeal& j, const SemigroupData& s,
                             const IntVec& grading) {
  const IntVec weight = strict_weights(atlas, grading);
  const std::size_t nz = weight.size();
  PropertyReport out;
  out.property = Property::t0_star;
  // Semigroup elements have H-degree zero since exchange relations are homogeneous.
  const GradingData gd = m_grading(atlas.initial_seed().matrix);
  const std::vector<HDegree> deg = variable_degrees(gd, atlas);
  SemigroupSearch search(s);
  for (std::size_t v = 0; v < nz; ++v) {
    if (atlas.variable(v).frozen) continue;
    for_each_weighted(weight, weight[v], [&](const IntVec& alpha) {
      if (monomial_degree(gd, deg, alpha) != deg[v]) return;
      IntVec target = alpha;
      target[v] -= 1;
      if (!search.member(target)) return;
      DerivationProbe p = probe_derivation(atlas, j, v, alpha);
      if (p.j_nontrivial && !p.exchangeable) out.derivation_witnesses.push_back(p);
      out.semigroup_probes.push_back(std::move(p));
    });
  }
  out.holds = out.derivation_witnesses.empty();
  return out;
}

}  // namespace cdf
