#include "cdf/complex.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "cdf/errors.hpp"

namespace cdf {

namespace {

bool is_subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Face without(const Face& f, std::size_t i) {
  Face out = f;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::size_t> vertices, std::vector<Face> facets) {
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError("facet with repeated vertex");
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < facets.size() && maximal; ++j)
      if (i != j && facets[j].size() > facets[i].size() && is_subset(facets[i], facets[j])) maximal = false;
    if (maximal) facets_.push_back(facets[i]);
  }
  std::set<std::size_t> vs(vertices.begin(), vertices.end());
  for (const auto& f : facets_) vs.insert(f.begin(), f.end());
  vertices_.assign(vs.begin(), vs.end());
}

bool SimplicialComplex::contains(const Face& f) const {
  Face g = f;
  std::sort(g.begin(), g.end());
  if (g.empty()) return true;
  return std::any_of(facets_.begin(), facets_.end(), [&](const Face& x) { return is_subset(g, x); });
}

std::set<Face> SimplicialComplex::faces() const {
  std::set<Face> out{Face{}};
  for (const auto& f : facets_) {
    const std::size_t r = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
      Face g;
      for (std::size_t i = 0; i < r; ++i)
        if (mask >> i & 1) g.push_back(f[i]);
      out.insert(std::move(g));
    }
  }
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(dimension() + 2), 0);
  for (const auto& f : faces()) ++out[f.size()];
  return out;
}

std::vector<Face> SimplicialComplex::minimal_non_faces() const {
  std::set<Face> all = faces();
  std::set<Face> out;
  for (const auto& f : all)
    for (auto v : vertices_) {
      if (!f.empty() && v <= f.back()) continue;
      Face g = f;
      g.push_back(v);
      if (all.count(g)) continue;
      bool minimal = true;
      for (std::size_t i = 0; i < g.size() && minimal; ++i) minimal = all.count(without(g, i)) > 0;
      if (minimal) out.insert(g);
    }
  return {out.begin(), out.end()};
}

bool SimplicialComplex::is_pure() const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Face& f) { return f.size() == facets_.front().size(); });
}

int SimplicialComplex::dimension() const {
  std::size_t top = 0;
  for (const auto& f : facets_) top = std::max(top, f.size());
  return static_cast<int>(top) - 1;
}

bool MonomialIdeal::contains(const IntVec& exponent) const {
  for (const auto& g : generators) {
    bool divides = true;
    for (std::size_t i = 0; i < g.size() && divides; ++i) divides = g[i] <= exponent[i];
    if (divides) return true;
  }
  return false;
}

SimplicialComplex cluster_complex(const Atlas& atlas) {
  return SimplicialComplex(atlas.mutable_ids(), atlas.clusters());
}

MonomialIdeal sr_ideal(const SimplicialComplex& k, const std::vector<std::size_t>& cone_points) {
  MonomialIdeal out;
  out.variables = k.vertices();
  for (auto c : cone_points) {
    if (std::binary_search(k.vertices().begin(), k.vertices().end(), c))
      throw InputError("cone point is already a vertex");
    out.variables.push_back(c);
  }
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < out.variables.size(); ++i) slot[out.variables[i]] = i;
  for (const auto& f : k.minimal_non_faces()) {
    IntVec e(out.variables.size(), 0);
    for (auto v : f) e[slot.at(v)] = 1;
    out.generators.push_back(std::move(e));
  }
  std::sort(out.generators.begin(), out.generators.end(), std::greater<>());
  return out;
}

SimplicialComplex link(const SimplicialComplex& k, const Face& face) {
  Face f = face;
  std::sort(f.begin(), f.end());
  if (!k.contains(f)) throw InputError("link: face not in complex");
  std::vector<Face> facets;
  for (const auto& g : k.facets()) {
    if (!is_subset(f, g)) continue;
    Face rest;
    std::set_difference(g.begin(), g.end(), f.begin(), f.end(), std::back_inserter(rest));
    facets.push_back(std::move(rest));
  }
  if (f.empty()) return SimplicialComplex(k.vertices(), facets);
  return SimplicialComplex({}, facets);
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  for (auto v : a.vertices())
    if (std::binary_search(b.vertices().begin(), b.vertices().end(), v))
      throw InputError("join: vertex sets overlap");
  std::vector<Face> facets;
  for (const auto& f : a.facets())
    for (const auto& g : b.facets()) {
      Face h = f;
      h.insert(h.end(), g.begin(), g.end());
      facets.push_back(std::move(h));
    }
  std::vector<std::size_t> vs = a.vertices();
  vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
  return SimplicialComplex(vs, facets);
}

bool is_flag(const SimplicialComplex& k) {
  for (const auto& f : k.minimal_non_faces())
    if (f.size() != 2) return false;
  return true;
}

SphereCheck sphere_check(const SimplicialComplex& k) {
  SphereCheck out;
  const auto& facets = k.facets();
  if (facets.empty()) return out;
  const int dim = k.dimension();

  if (k.is_pure()) {
    std::map<Face, std::vector<std::size_t>> ridges;
    for (std::size_t i = 0; i < facets.size(); ++i)
      for (std::size_t j = 0; j < facets[i].size(); ++j) ridges[without(facets[i], j)].push_back(i);
    bool ok = std::all_of(ridges.begin(), ridges.end(), [](const auto& r) { return r.second.size() == 2; });
    if (ok) {
      std::vector<bool> seen(facets.size(), false);
      std::vector<std::vector<std::size_t>> adj(facets.size());
      for (const auto& [r, fs] : ridges) {
        adj[fs[0]].push_back(fs[1]);
        adj[fs[1]].push_back(fs[0]);
      }
      std::queue<std::size_t> q;
      q.push(0);
      seen[0] = true;
      std::size_t count = 1;
      while (!q.empty()) {
        auto i = q.front();
        q.pop();
        for (auto j : adj[i])
          if (!seen[j]) {
            seen[j] = true;
            ++count;
            q.push(j);
          }
      }
      ok = count == facets.size();
    }
    out.pseudomanifold = ok;
  }

  // Reduced Euler characteristic: sum over all faces (empty face included) of (-1)^dim.
  long chi = 0;
  auto fv = k.f_vector();
  for (std::size_t i = 0; i < fv.size(); ++i) chi += (i % 2 == 1 ? 1 : -1) * static_cast<long>(fv[i]);
  out.euler_ok = chi == (dim % 2 == 0 ? 1 : -1);
  return out;
}

bool link_matches_frozen_seed(const Atlas& atlas, std::size_t seed, const std::vector<std::size_t>& positions) {
  const std::size_t n = atlas.n(), m = atlas.m();
  const SeedRecord& rec = atlas.seeds().at(seed);
  std::vector<bool> in_face(m, false);
  for (auto p : positions) {
    if (p >= n) throw InputError("face positions must be mutable");
    in_face[p] = true;
  }
  // Remaining mutable positions first, then the frozen face, then the original frozen rows.
  std::vector<std::size_t> order, keep_cols;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_face[i]) {
      order.push_back(i);
      keep_cols.push_back(i);
    }
  const std::size_t n2 = order.size();
  for (std::size_t i = 0; i < n; ++i)
    if (in_face[i]) order.push_back(i);
  for (std::size_t i = n; i < m; ++i) order.push_back(i);

  Face face;
  for (auto p : positions) face.push_back(rec.cluster[p]);
  SimplicialComplex lk = link(cluster_complex(atlas), face);
  if (n2 == 0) return lk.facets() == std::vector<Face>{Face{}};

  IntMatrix b(m, n2);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n2; ++c) b(r, c) = rec.matrix(order[r], keep_cols[c]);
  Atlas small = enumerate(make_seed(ExchangeMatrix(b, n2)), AtlasOptions{atlas.seeds().size() + 1, false});

  // Small-atlas variable reached by path p at position i = atlas variable after rec.path then p.
  std::map<std::size_t, std::size_t> image;
  for (auto id : small.mutable_ids()) {
    const auto& v = small.variable(id);
    std::vector<std::size_t> path = rec.path;
    for (auto k : v.path) path.push_back(order[k]);
    image[id] = atlas.variable_at(atlas.follow_path(path), order[v.position]);
  }
  std::vector<Face> facets;
  for (const auto& c : small.clusters()) {
    Face f;
    for (auto id : c) f.push_back(image.at(id));
    facets.push_back(std::move(f));
  }
  return SimplicialComplex({}, facets) == lk;
}

bool complexes_match_by_paths(const Atlas& a, const Atlas& b) {
  if (a.n() != b.n() || !(a.initial_seed().matrix.principal() == b.initial_seed().matrix.principal()))
    throw InputError("atlases must share the principal part");
  std::map<std::size_t, std::size_t> image;
  for (auto id : a.mutable_ids()) {
    const auto& v = a.variable(id);
    image[id] = b.variable_at(b.follow_path(v.path), v.position);
  }
  std::set<std::size_t> targets;
  for (const auto& [x, y] : image) targets.insert(y);
  if (targets.size() != image.size() || image.size() != b.mutable_ids().size()) return false;
  std::vector<Face> facets;
  for (const auto& c : a.clusters()) {
    Face f;
    for (auto id : c) f.push_back(image.at(id));
    facets.push_back(std::move(f));
  }
  return SimplicialComplex({}, facets) == cluster_complex(b);
}

}  // namespace cdf
