#include "cdf/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cdf/errors.hpp"
#include "cdf/lp.hpp"

namespace cdf {

IntVec interior_weight(const Cone& c, const std::vector<IntVec>& dual_generators) {
  const std::size_t d = c.ambient_dim;
  QVec base(d, 0);
  for (const auto& r : c.rays)
    for (std::size_t i = 0; i < d; ++i) base[i] += r[i];
  // Shift by lineality so that every entry is non-negative, keeping the total small.
  const std::size_t l = c.lineality.size();
  LinearProgram lp;
  lp.num_vars = l;
  lp.objective.assign(l, 0);
  for (std::size_t i = 0; i < d; ++i) {
    QVec row(l);
    for (std::size_t k = 0; k < l; ++k) {
      row[k] = c.lineality[k][i];
      lp.objective[k] += c.lineality[k][i];
    }
    lp.at_least.emplace_back(std::move(row), -base[i]);
  }
  QVec w = base;
  // Entries are bounded below by zero, so the LP is bounded.
  std::optional<QVec> shift;
  if (l > 0) shift = solve_lp(lp);
  if (shift)
    for (std::size_t k = 0; k < l; ++k)
      for (std::size_t i = 0; i < d; ++i) w[i] += (*shift)[k] * c.lineality[k][i];
  ZVec z = primitive(clear_denominators(w));
  IntVec out = to_int(z);
  for (const auto& g : dual_generators) {
    if (std::all_of(g.begin(), g.end(), [](Int x) { return x == 0; })) continue;
    Int s = 0;
    for (std::size_t i = 0; i < d; ++i) s = checked_add(s, checked_mul(out[i], g[i]));
    if (s <= 0) throw std::runtime_error("degenerate cone: no interior weight");
  }
  return out;
}

GroebnerCone groebner_cone(const UniversalData& u) {
  if (has_degenerate_vertex(u.base.initial_seed().matrix))
    throw InputError("isolated vertex without frozen neighbours: Groebner cone is degenerate");
  std::set<IntVec> gens;
  for (const auto& r : u.relations) {
    auto add = [&](const RelationSide& s) {
      IntVec d(u.num_z(), 0);
      d[r.v] += 1;
      d[r.w] += 1;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= s.z[i];
      gens.insert(std::move(d));
    };
    if (!r.owned_plus.empty()) add(r.plus);
    if (!r.owned_minus.empty()) add(r.minus);
  }
  GroebnerCone out;
  out.dual_generators.assign(gens.begin(), gens.end());
  out.cone = dual_cone(out.dual_generators, u.num_z());
  out.simplicial_mod_lineality = is_simplicial(out.cone);
  out.smooth_mod_lineality = is_smooth(out.cone);
  out.interior_weight = interior_weight(out.cone, out.dual_generators);
  return out;
}

}  // namespace cdf
