#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cdf/complex.hpp"
#include "cdf/errors.hpp"
#include "cdf/seed_io.hpp"

using namespace cdf;

namespace {

SimplicialComplex cycle(std::size_t len, std::size_t offset = 0) {
  std::vector<Face> facets;
  for (std::size_t i = 0; i < len; ++i) facets.push_back({offset + i, offset + (i + 1) % len});
  return SimplicialComplex({}, facets);
}

// Brute force: a subset is a face iff all pairs are compatible (flagness assumed only for the oracle's
// own checks below, compared against the facet description).
bool is_cycle_complex(const SimplicialComplex& k, std::size_t len) {
  if (k.vertices().size() != len || k.facets().size() != len) return false;
  for (auto v : k.vertices()) {
    std::size_t deg = 0;
    for (const auto& f : k.facets()) deg += std::count(f.begin(), f.end(), v);
    if (deg != 2) return false;
  }
  return sphere_check(k).pseudomanifold;
}

}  // namespace

TEST_CASE("cluster complexes of rank two are polygons") {
  for (auto [name, len] : std::vector<std::pair<std::string, std::size_t>>{
           {"a2", 5}, {"b2", 6}, {"c2", 6}, {"g2", 8}, {"a1xa1", 4}}) {
    Atlas a = enumerate(bundled_seed(name));
    SimplicialComplex k = cluster_complex(a);
    INFO(name);
    CHECK(is_cycle_complex(k, len));
    CHECK(is_flag(k));
    auto s = sphere_check(k);
    CHECK(s.pseudomanifold);
    CHECK(s.euler_ok);
  }
}

TEST_CASE("Stanley-Reisner ideals") {
  Atlas a = enumerate(bundled_seed("a2"));
  SimplicialComplex k = cluster_complex(a);
  MonomialIdeal i = sr_ideal(k, a.frozen_ids());
  CHECK(i.variables.size() == 8);
  REQUIRE(i.generators.size() == 5);
  for (const auto& g : i.generators) {
    CHECK(std::accumulate(g.begin(), g.end(), Int{0}) == 2);
    for (std::size_t c = 5; c < 8; ++c) CHECK(g[c] == 0);
    std::vector<std::size_t> pair;
    for (std::size_t c = 0; c < 5; ++c)
      if (g[c]) pair.push_back(i.variables[c]);
    CHECK(a.find_pair(pair[0], pair[1]));
  }
  CHECK(std::is_sorted(i.generators.begin(), i.generators.end(), std::greater<>()));

  Atlas g2 = enumerate(bundled_seed("g2"));
  MonomialIdeal j = sr_ideal(cluster_complex(g2));
  CHECK(j.generators.size() == 20);
  std::size_t exchange = 0;
  for (const auto& gen : j.generators) {
    std::vector<std::size_t> pair;
    for (std::size_t c = 0; c < gen.size(); ++c)
      if (gen[c]) pair.push_back(j.variables[c]);
    exchange += g2.find_pair(pair[0], pair[1]).has_value();
  }
  CHECK(exchange == 8);

  SimplicialComplex simplex({}, {{0, 1, 2}});
  CHECK(sr_ideal(simplex, {5}).generators.empty());
  SimplicialComplex hollow({}, {{0, 1}, {1, 2}, {0, 2}});
  auto h = sr_ideal(hollow);
  CHECK(h.generators == std::vector<IntVec>{{1, 1, 1}});
  CHECK_FALSE(is_flag(hollow));
  CHECK(h.contains({2, 1, 1}));
  CHECK_FALSE(h.contains({2, 1, 0}));
  // A vertex in no facet is a minimal non-face.
  SimplicialComplex ghost({3}, {{0, 1}});
  CHECK(sr_ideal(ghost).generators == std::vector<IntVec>{{0, 0, 1}});
}

TEST_CASE("links and joins") {
  SimplicialComplex pent = cycle(5);
  SimplicialComplex lk = link(pent, {0});
  CHECK(lk.facets() == std::vector<Face>{{1}, {4}});
  CHECK(sphere_check(lk).pseudomanifold);
  CHECK(sphere_check(lk).euler_ok);
  CHECK(link(pent, {}) == pent);
  CHECK_THROWS_AS(link(pent, {0, 2}), InputError);

  SimplicialComplex s0a({}, {{0}, {1}}), s0b({}, {{2}, {3}});
  SimplicialComplex square = join(s0a, s0b);
  CHECK_FALSE(square == cycle(4));  // different vertex labelling
  CHECK(square.facets() == std::vector<Face>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  Atlas a = enumerate(bundled_seed("a1xa1"));
  CHECK(cluster_complex(a).facets().size() == 4);
  CHECK_THROWS_AS(join(s0a, s0a), InputError);
}

TEST_CASE("sphere checks") {
  Atlas a3 = enumerate(bundled_seed("a3"));
  SimplicialComplex k = cluster_complex(a3);
  CHECK(k.f_vector() == std::vector<std::size_t>{1, 9, 21, 14});
  auto s = sphere_check(k);
  CHECK(s.pseudomanifold);
  CHECK(s.euler_ok);
  CHECK(is_flag(k));

  std::vector<Face> broken = cycle(5).facets();
  broken.pop_back();
  auto t = sphere_check(SimplicialComplex({}, broken));
  CHECK_FALSE(t.pseudomanifold);
  CHECK_FALSE(t.euler_ok);
  // Two disjoint triangles: every ridge in two facets but disconnected.
  std::vector<Face> two = cycle(3).facets();
  SimplicialComplex other = cycle(3, 10);
  for (const auto& f : other.facets()) two.push_back(f);
  CHECK_FALSE(sphere_check(SimplicialComplex({}, two)).pseudomanifold);
  CHECK_FALSE(sphere_check(SimplicialComplex({}, {{0, 1, 2}, {3}})).pseudomanifold);
}

TEST_CASE("finite-type complexes are flag spheres") {
  for (std::string name : {"a4", "b3", "c3", "d4", "gr26", "a3_bad"}) {
    Atlas a = enumerate(bundled_seed(name), AtlasOptions{1000, false});
    SimplicialComplex k = cluster_complex(a);
    INFO(name);
    CHECK(is_flag(k));
    auto s = sphere_check(k);
    CHECK(s.pseudomanifold);
    CHECK(s.euler_ok);
    CHECK(k.dimension() == static_cast<int>(a.n()) - 1);
  }
}

TEST_CASE("links are complexes of frozen seeds") {
  for (std::string name : {"a2", "a3", "b3", "g2", "a3_bad"}) {
    Atlas a = enumerate(bundled_seed(name), AtlasOptions{1000, false});
    const std::size_t n = a.n();
    for (std::size_t s = 0; s < a.seeds().size(); ++s)
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) positions.push_back(i);
        INFO(name << " seed " << s << " mask " << mask);
        CHECK(link_matches_frozen_seed(a, s, positions));
      }
  }
}

TEST_CASE("block-diagonal matrices give joins") {
  // A2 (+) A1 (+) B2 blocks.
  IntMatrix b = IntMatrix::from_rows({{0, 1, 0, 0, 0},
                                      {-1, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 1},
                                      {0, 0, 0, -2, 0}});
  Atlas whole = enumerate(make_seed(ExchangeMatrix(b, 5)), AtlasOptions{1000, false});
  SimplicialComplex k = cluster_complex(whole);
  CHECK(k.facets().size() == 5 * 2 * 6);
  // Components are determined by g-vector support.
  std::vector<std::vector<std::size_t>> blocks{{0, 1}, {2}, {3, 4}};
  std::vector<SimplicialComplex> parts;
  for (const auto& blk : blocks) {
    std::vector<Face> facets;
    for (const auto& f : k.facets()) {
      Face g;
      for (auto v : f) {
        const auto& gv = g_vector(whole, v);
        bool inside = true;
        for (std::size_t i = 0; i < gv.size(); ++i)
          if (gv[i] != 0 && std::find(blk.begin(), blk.end(), i) == blk.end()) inside = false;
        if (inside) g.push_back(v);
      }
      facets.push_back(g);
    }
    parts.emplace_back(std::vector<std::size_t>{}, facets);
  }
  CHECK(parts[0].facets().size() == 5);
  CHECK(parts[1].facets().size() == 2);
  CHECK(parts[2].facets().size() == 6);
  CHECK(join(join(parts[0], parts[1]), parts[2]) == k);
}

TEST_CASE("coefficient independence") {
  Seed a2 = bundled_seed("a2");
  Seed bare = make_seed(ExchangeMatrix(a2.matrix.principal(), 2));
  Seed other = make_seed(a2.matrix.with_frozen({{2, -1}, {0, 3}}));
  Atlas x = enumerate(a2), y = enumerate(bare), z = enumerate(other);
  CHECK(complexes_match_by_paths(x, y));
  CHECK(complexes_match_by_paths(y, z));
  for (std::string name : {"g2", "b3"}) {
    Seed s = bundled_seed(name);
    Atlas p = enumerate(s, AtlasOptions{1000, false});
    std::vector<IntVec> rows(s.matrix.n(), IntVec(s.matrix.n(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i][i] = 1;
    Atlas q = enumerate(make_seed(s.matrix.with_frozen(rows)), AtlasOptions{1000, false});
    CHECK(complexes_match_by_paths(p, q));
  }
}
