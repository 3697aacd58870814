#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cdf/errors.hpp"
#include "cdf/seed_io.hpp"
#include "cdf/universal.hpp"

using namespace cdf;

namespace {

std::size_t id_of(const Atlas& a, const IntVec& g) {
  auto id = a.find_by_g(g);
  REQUIRE(id);
  return *id;
}

const UniversalRelation& relation_for(const UniversalData& u, std::size_t v, std::size_t w) {
  for (const auto& r : u.relations)
    if (r.v == std::min(v, w) && r.w == std::max(v, w)) return r;
  FAIL("missing relation");
  return u.relations.front();
}

LaurentPoly side_value(const Atlas& a, const RelationSide& s) {
  LaurentPoly out = LaurentPoly::constant(a.laurent_ring(), 1);
  for (std::size_t id = 0; id < s.z.size(); ++id)
    if (s.z[id]) out = out * laurent_expansion(a, id).pow(static_cast<unsigned>(s.z[id]));
  return out;
}

}  // namespace

TEST_CASE("running example: coefficient rows and relations") {
  Atlas base = enumerate(bundled_seed("a2"));
  UniversalData u = build_universal(base);
  CHECK(u.p() == 5);
  CHECK(u.u_rows.to_rows() == std::vector<IntVec>{{-1, 0}, {0, -1}, {0, 1}, {1, -1}, {1, 0}});
  CHECK(u.relations.size() == 5);

  // Variables in the order x25, x13, x24, x35, x14, s1, s2, s3.
  std::vector<std::size_t> z{id_of(base, {-1, 0, 0, 2, 0}), id_of(base, {1, 0, 0, 0, 0}),
                             id_of(base, {-1, 1, 0, 1, 0}), id_of(base, {0, -1, 0, 1, 1}),
                             id_of(base, {0, 1, 0, 0, 0}),  2, 3, 4};
  enum { X25, X13, X24, X35, X14, S1, S2, S3 };
  struct Expected {
    int v, w, owner;            // reference coefficient index 1..5 owning the relation
    std::vector<int> own_z;     // z-part of the owned side
    std::vector<int> other_t;   // reference t indices (with multiplicity) on the other side
    std::vector<int> other_z;
  };
  std::vector<Expected> table{
      {X24, X35, 1, {S3, X25}, {2, 5}, {S1, S2}},
      {X14, X35, 2, {S1, X13}, {1, 3}, {S2, S3}},
      {X14, X25, 3, {S2, X24}, {2, 4}, {S1, S1}},
      {X13, X25, 4, {S1, X35}, {3, 5}, {S2, S2}},
      {X13, X24, 5, {S2, X14}, {1, 4}, {S1, S3}},
  };
  // Reference coefficient k corresponds to the coefficient owned by its relation.
  std::map<int, std::size_t> relabel;
  for (const auto& e : table) {
    const auto& r = relation_for(u, z[e.v], z[e.w]);
    auto owned = r.owned_plus.empty() ? r.owned_minus : r.owned_plus;
    REQUIRE(owned.size() == 1);
    CHECK(r.owned_plus.size() + r.owned_minus.size() == 1);
    relabel[e.owner] = owned.front();
  }
  CHECK(std::set<std::size_t>{relabel[1], relabel[2], relabel[3], relabel[4], relabel[5]}.size() == 5);
  for (const auto& e : table) {
    const auto& r = relation_for(u, z[e.v], z[e.w]);
    bool plus_owns = !r.owned_plus.empty();
    const RelationSide& own = plus_owns ? r.plus : r.minus;
    const RelationSide& other = plus_owns ? r.minus : r.plus;
    IntVec own_z(base.variables().size(), 0), other_z = own_z, other_t(5, 0), own_t(5, 0);
    for (int k : e.own_z) own_z[z[k]] += 1;
    for (int k : e.other_z) other_z[z[k]] += 1;
    for (int k : e.other_t) other_t[relabel[k]] += 1;
    own_t[relabel[e.owner]] = 1;
    CHECK(own.z == own_z);
    CHECK(own.t == own_t);
    CHECK(other.z == other_z);
    CHECK(other.t == other_t);
  }

  // Coefficient degrees over (x25, x13, x24, x35, x14, s1, s2, s3).
  std::vector<IntVec> expected{{-1, 0, 1, 1, 0, 0, 0, -1},
                               {0, -1, 0, 1, 1, -1, 0, 0},
                               {1, 0, -1, 0, 1, 0, -1, 0},
                               {1, 1, 0, -1, 0, -1, 0, 0},
                               {0, 1, 1, 0, -1, 0, -1, 0}};
  auto deg = t_degrees(u);
  for (int k = 1; k <= 5; ++k) {
    IntVec mine(8);
    for (int c = 0; c < 8; ++c) mine[c] = deg[relabel[k]][z[c]];
    CHECK(mine == expected[k - 1]);
  }
}

TEST_CASE("specializing coefficients to one gives the base exchange relations") {
  for (std::string name : {"a2", "a3", "b2", "c3", "g2", "a3_bad", "gr26", "a1_frozen"}) {
    Atlas base = enumerate(bundled_seed(name));
    UniversalData u = build_universal(base);
    INFO(name);
    CHECK(u.p() == base.mutable_ids().size());
    for (const auto& r : u.relations) {
      LaurentPoly lhs = laurent_expansion(base, r.v) * laurent_expansion(base, r.w);
      CHECK(lhs == side_value(base, r.plus) + side_value(base, r.minus));
    }
    // Every coefficient has an owner and the degrees are pairwise distinct.
    auto deg = t_degrees(u);
    std::set<IntVec> distinct(deg.begin(), deg.end());
    CHECK(distinct.size() == u.p());
  }
}

TEST_CASE("non-primitive relations own no coefficient") {
  Atlas base = enumerate(bundled_seed("a3"));
  UniversalData u = build_universal(base);
  CHECK(u.relations.size() == 15);
  std::size_t owning = 0;
  for (const auto& r : u.relations) owning += !r.owned_plus.empty() || !r.owned_minus.empty();
  CHECK(owning == 9);
  for (const auto& o : u.owners) CHECK(o.size() == 1);
}

TEST_CASE("octagon relations with universal coefficients") {
  Atlas base = enumerate(bundled_seed("g2"));
  UniversalData u = build_universal(base);
  REQUIRE(u.p() == 8);
  // Cyclic order of the octagon starting anywhere, in both directions and all rotations.
  SimplicialComplex k = cluster_complex(base);
  std::vector<std::size_t> cyc{k.facets().front()[0]};
  std::size_t prev = cyc[0], cur = k.facets().front()[1];
  while (cur != cyc[0]) {
    cyc.push_back(cur);
    for (const auto& f : k.facets())
      if (std::count(f.begin(), f.end(), cur) && !std::count(f.begin(), f.end(), prev)) {
        prev = cur;
        cur = f[0] == cur ? f[1] : f[0];
        break;
      }
  }
  REQUIRE(cyc.size() == 8);
  int matches = 0;
  for (int dir : {1, -1})
    for (int rot = 0; rot < 8; ++rot) {
      // Reference vertex i (1..8) -> base id.
      auto vert = [&](int i) { return cyc[static_cast<std::size_t>(((dir * (i - 1) + rot) % 8 + 8) % 8)]; };
      auto idx = [](int i) { return ((i - 1) % 8 + 8) % 8 + 1; };
      // Reference coefficient t_i owns the relation of z_{i-1} z_{i+1}.
      std::map<int, std::size_t> t;
      bool ok = true;
      for (int i = 1; i <= 8 && ok; ++i) {
        const auto& r = relation_for(u, vert(idx(i - 1)), vert(idx(i + 1)));
        auto owned = r.owned_plus.empty() ? r.owned_minus : r.owned_plus;
        ok = owned.size() == 1;
        if (ok) t[i] = owned.front();
      }
      for (int i = 1; i <= 8 && ok; ++i) {
        const auto& r = relation_for(u, vert(idx(i - 1)), vert(idx(i + 1)));
        bool plus_owns = !r.owned_plus.empty();
        const RelationSide& own = plus_owns ? r.plus : r.minus;
        const RelationSide& other = plus_owns ? r.minus : r.plus;
        IntVec own_z(8, 0), other_t(8, 0);
        own_z[vert(i)] = i % 2 == 0 ? 1 : 3;
        std::vector<int> powers = i % 2 == 0 ? std::vector<int>{1, 1, 2, 1, 1} : std::vector<int>{1, 3, 2, 3, 1};
        for (int s = 0; s < 5; ++s) other_t[t[idx(i + 2 + s)]] += powers[static_cast<std::size_t>(s)];
        ok = own.z == own_z && other.z == IntVec(8, 0) && other.t == other_t;
      }
      matches += ok;
    }
  CHECK(matches >= 1);
}

TEST_CASE("fiber at zero") {
  Atlas a2 = enumerate(bundled_seed("a2"));
  MonomialIdeal j = join_ideal(a2);
  auto f = fiber_at_zero(build_universal(a2), j);
  CHECK(f.all_generators);
  CHECK(f.both_sides_vanish);
  CHECK(f.monomials.size() == 5);
  CHECK(j.generators.size() == 5);

  Atlas g2 = enumerate(bundled_seed("g2"));
  MonomialIdeal jg = join_ideal(g2);
  auto fg = fiber_at_zero(build_universal(g2), jg);
  CHECK(fg.all_generators);
  CHECK(fg.monomials.size() == 8);
  CHECK(jg.generators.size() == 20);

  Atlas a1 = enumerate(bundled_seed("a1"));
  auto fa = fiber_at_zero(build_universal(a1), join_ideal(a1));
  CHECK(fa.all_generators);
  CHECK(fa.monomials == std::vector<IntVec>{{1, 1}});
}

TEST_CASE("degenerate vertices") {
  Atlas a1 = enumerate(bundled_seed("a1"));
  UniversalData u = build_universal(a1);
  CHECK(u.relations.front().owned_plus.size() == 1);
  CHECK(u.relations.front().owned_minus.size() == 1);
  CHECK_THROWS_AS(t_degrees(u), InputError);
  CHECK(has_degenerate_vertex(bundled_seed("a1xa1").matrix));
  CHECK_FALSE(has_degenerate_vertex(bundled_seed("a1_frozen").matrix));
  auto d = t_degrees(build_universal(enumerate(bundled_seed("a1_frozen"))));
  CHECK(d.size() == 2);
  CHECK(d[0] != d[1]);
}
