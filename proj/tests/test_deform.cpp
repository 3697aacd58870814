#include <doctest.h>

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "cdf/cotangent.hpp"
#include "cdf/deform.hpp"
#include "cdf/errors.hpp"
#include "cdf/groebner.hpp"
#include "cdf/seed_io.hpp"
#include "reference.hpp"

using namespace cdf;
using namespace cdf::reference;

namespace {

struct Lifted {
  Atlas atlas;
  UniversalData u;
  DeformationFamily family;
};

Lifted lift_bundled(const std::string& name) {
  Atlas a = enumerate(bundled_seed(name));
  UniversalData u = build_universal(a);
  DeformationFamily f = lift(first_order(u));
  return {a, u, f};
}

std::string dump(const DeformationFamily& f) {
  std::string out;
  for (const auto& g : f.generators) out += g.to_string(&f.ordering) + "\n";
  return out;
}

void check_invariants(const DeformationFamily& f) {
  CHECK(is_flat(f));
  for (std::size_t g = 0; g < f.generators.size(); ++g)
    for (const auto& [e, c] : f.generators[g].terms()) CHECK(f.t_degree(e) == f.leading[g]);
  for (const auto& s : f.stats) CHECK_FALSE(s.greedy);
}

}  // namespace

TEST_CASE("reference rows parse") {
  Poly p = parse_row("-3t_1t_2^2-x_25s_3t_1+x_24x_35");
  CHECK(p.size() == 3);
  CHECK(p[Mono{{"t1", 1}, {"t2", 2}}] == -3);
  CHECK(p[Mono{{"x25", 1}, {"s3", 1}, {"t1", 1}}] == -1);
  CHECK(p[Mono{{"x24", 1}, {"x35", 1}}] == 1);
}

TEST_CASE("first order perturbs exactly the exchangeable generators") {
  Atlas a = enumerate(bundled_seed("g2"));
  UniversalData u = build_universal(a);
  DeformationFamily f = first_order(u);
  CHECK(f.order == 1);
  CHECK(f.generators.size() == 20);
  std::size_t perturbed = 0;
  for (std::size_t g = 0; g < f.generators.size(); ++g) {
    const auto terms = f.generators[g].terms();
    CHECK(terms.size() == (f.exchangeable[g] ? 2u : 1u));
    perturbed += terms.size() == 2;
    for (const auto& [e, c] : terms)
      if (f.t_order(e) == 1) {
        IntVec z(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(f.num_z));
        Int deg = 0;
        for (auto x : z) deg += x;
        CHECK((deg == 1 || deg == 3));
      }
  }
  CHECK(perturbed == 8);

  Atlas a1 = enumerate(bundled_seed("a1xa1"));
  CHECK_THROWS_AS(first_order(build_universal(a1)), InputError);
}

TEST_CASE("A2 universal relations equal the reference rows") {
  Atlas a = enumerate(bundled_seed("a2"));
  UniversalData u = build_universal(a);
  auto m = match(from_relations(u), a2_rows(), 's');
  REQUIRE(m);
  CHECK(m->z[*a.find_by_g({-1, 0, 0, 2, 0})] == "x25");
  CHECK(m->z[4] == "s3");
  // A wrong coefficient is not matched.
  std::vector<std::string> rows = a2_rows();
  rows[0] = "-s_1s_2t_2t_5-x_25s_3t_1+2x_24x_35";
  CHECK_FALSE(match(from_relations(u), rows, 's'));
}

TEST_CASE("A2 lift reproduces the reference family") {
  Lifted l = lift_bundled("a2");
  CHECK(l.family.order == 2);
  CHECK(match(from_family(l.family, l.atlas), a2_rows(), 's'));
  FamilyReport r = verify_family(l.family, l.u);
  CHECK(r.ok());
  CHECK(r.exchange_checked == 5);
  CHECK(r.extra_relations == 0);
  check_invariants(l.family);
  for (const auto& s : l.family.stats) CHECK(s.nullity == 0);
}

TEST_CASE("G2 lift reproduces the reference family") {
  Lifted l = lift_bundled("g2");
  CHECK(match(from_family(l.family, l.atlas), g2_rows(), 's'));
  FamilyReport r = verify_family(l.family, l.u);
  CHECK(r.ok());
  CHECK(r.exchange_checked == 8);
  CHECK(r.extra_relations == 12);
  check_invariants(l.family);
  for (const auto& s : l.family.stats) CHECK(s.nullity == 0);
  CHECK_FALSE(obstruction_class(l.atlas).unobstructed);

  // The two -3 terms sit on opposite pairs: t exponent = (1,...,1) + two further units.
  std::size_t threes = 0;
  for (std::size_t g = 0; g < l.family.generators.size(); ++g)
    for (const auto& [e, c] : l.family.generators[g].terms()) {
      if (c != -3) continue;
      ++threes;
      CHECK_FALSE(l.family.exchangeable[g]);
      Int twos = 0;
      for (std::size_t i = 0; i < l.family.num_t; ++i) {
        CHECK(e[l.family.num_z + i] >= 1);
        twos += e[l.family.num_z + i] == 2;
      }
      CHECK(twos == 2);
      CHECK(l.family.t_order(e) == 10);
    }
  CHECK(threes == 2);
}

TEST_CASE("B2 and C2 lift without obstruction") {
  for (std::string name : {"b2", "c2"}) {
    CAPTURE(name);
    Lifted l = lift_bundled(name);
    const DeformationFamily& f = l.family;
    CHECK(f.generators.size() == 9);
    CHECK(verify_family(f, l.u).ok());
    check_invariants(f);
    CHECK_FALSE(obstruction_class(l.atlas).unobstructed);

    // First-order terms are t times a power of the middle vertex; powers alternate 2, 1 around
    // the hexagon, and the squared initial variable is the one with |b| = 2 in the other column.
    std::map<std::size_t, Int> power;
    for (std::size_t g = 0; g < f.generators.size(); ++g) {
      if (!f.exchangeable[g]) continue;
      for (const auto& [e, c] : f.generators[g].terms()) {
        if (f.t_order(e) != 1) continue;
        std::size_t mid = f.num_z;
        for (std::size_t v = 0; v < f.num_z; ++v)
          if (e[v]) {
            CHECK(mid == f.num_z);
            mid = v;
          }
        REQUIRE(mid < f.num_z);
        power[mid] = e[mid];
      }
    }
    CHECK(power.size() == 6);
    const SimplicialComplex k = cluster_complex(l.atlas);
    for (const auto& [v, p] : power) {
      CHECK((p == 1 || p == 2));
      for (const auto& [w, q] : power)
        if (k.contains(Face{std::min(v, w), std::max(v, w)}) && v != w) CHECK(p + q == 3);
    }
    const ExchangeMatrix& b = l.atlas.initial_seed().matrix;
    for (std::size_t i = 0; i < 2; ++i) CHECK(power[i] == std::abs(b(i, 1 - i)));
  }
}

TEST_CASE("flatness agrees with an independent Buchberger run") {
  for (std::string name : {"a2", "b2", "c2", "g2"}) {
    CAPTURE(name);
    Lifted l = lift_bundled(name);
    std::vector<LaurentPoly> gb = groebner_basis(l.family.generators, l.family.ordering);
    std::set<IntVec> leads, expected;
    for (const auto& g : gb) {
      IntVec e = leading_term(g, l.family.ordering).first;
      leads.insert(IntVec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(l.family.num_z)));
      CHECK(l.family.t_order(e) == 0);
    }
    for (const auto& e : l.family.leading) expected.insert(e);
    CHECK(leads == expected);
  }
}

TEST_CASE("lifting is deterministic and respects its budget") {
  CHECK(dump(lift_bundled("g2").family) == dump(lift_bundled("g2").family));
  Atlas a = enumerate(bundled_seed("g2"));
  UniversalData u = build_universal(a);
  CHECK_THROWS_AS(lift(first_order(u), 5), BudgetError);
  DeformationFamily f = lift(first_order(u), 10);
  CHECK(f.order == 10);
}

TEST_CASE("Laurent check rejects a perturbed family") {
  Lifted l = lift_bundled("a2");
  DeformationFamily f = l.family;
  IntVec e(f.num_z + f.num_t, 0);
  e[f.num_z] = 2;
  f.generators[0].add_term(e, 1);
  FamilyReport r = verify_family(f, l.u);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.laurent_ok);
  CHECK_FALSE(r.failures.empty());
}

TEST_CASE("exchange-minimal representatives") {
  auto q = [](std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  // Points (1 + y, 1 - y, 0): the vertices (0,2,0) and (2,0,0) have one nonzero each.
  AffineSolution line{q({1, 1, 0}), {q({1, -1, 0})}};
  MinimalChoice all = exchange_minimal(line, {true, true, true});
  CHECK(all.values == q({0, 2, 0}));
  CHECK(all.tie);
  CHECK_FALSE(all.greedy);
  // Only the second coordinate counts first: zeroing it wins.
  MinimalChoice second = exchange_minimal(line, {false, true, false});
  CHECK(second.values == q({2, 0, 0}));
  CHECK_FALSE(second.tie);
  // A unique solution is returned unchanged.
  CHECK(exchange_minimal(AffineSolution{q({3, 0, 1}), {}}, {true, true, true}).values == q({3, 0, 1}));
  // Points (1 + a, 1 + b, 1 + a + b, 1): the vertices (0,0,-1,1), (0,1,0,1), (1,0,0,1) all have
  // two nonzeros and the lexicographically smallest is chosen.
  AffineSolution plane{q({1, 1, 1, 1}), {q({1, 0, 1, 0}), q({0, 1, 1, 0})}};
  MinimalChoice p = exchange_minimal(plane, {true, true, true, true});
  std::size_t nonzero = 0;
  for (const auto& x : p.values) nonzero += x != 0;
  CHECK(nonzero == 2);
  CHECK(p.values[3] == 1);
  CHECK(p.tie);
  CHECK(p.values == q({0, 0, -1, 1}));

  // Many free directions: the greedy fallback still returns a point of the space.
  const std::size_t n = 60, d = 12;
  AffineSolution big{QVec(n, 1), {}};
  for (std::size_t s = 0; s < d; ++s) {
    QVec v(n, 0);
    for (std::size_t u = s; u < n; u += d) v[u] = 1;
    big.nullspace.push_back(v);
  }
  MinimalChoice g = exchange_minimal(big, std::vector<bool>(n, true));
  CHECK(g.greedy);
  for (const auto& x : g.values) CHECK(x == 0);
}
