#include <doctest.h>

#include <algorithm>
#include <queue>
#include <random>
#include <set>

#include "cdf/cotangent.hpp"
#include "cdf/errors.hpp"
#include "cdf/gradings.hpp"
#include "cdf/properties.hpp"
#include "cdf/seed_io.hpp"
#include "oracles.hpp"

using namespace cdf;

namespace {

Seed seed_from_rows(const std::vector<IntVec>& rows, std::size_t n) {
  return make_seed(ExchangeMatrix(IntMatrix::from_rows(rows), n));
}

struct Checked {
  bool t0 = false, t0_star = false;
};

Checked check_both(const Seed& s) {
  Atlas a = enumerate(s, AtlasOptions{1000, false});
  auto d = find_strictly_positive_grading(a);
  REQUIRE(d);
  MonomialIdeal j = join_ideal(a);
  UniversalData u = build_universal(a);
  SemigroupData sg = make_semigroup(u);
  return {check_t0(a, j, m_grading(s.matrix), *d).holds, check_t0_star(a, j, sg, *d).holds};
}

}  // namespace

TEST_CASE("T1 on the running example and the failing A3 matrix") {
  Atlas a2 = enumerate(bundled_seed("a2"));
  PropertyReport r = check_t1(a2);
  CHECK(r.holds);
  CHECK(r.matrices_checked == a2.seeds().size());
  CHECK(r.matrices_checked == 5);

  Atlas bad = enumerate(bundled_seed("a3_bad"), AtlasOptions{1000, false});
  PropertyReport f = check_t1(bad);
  CHECK_FALSE(f.holds);
  CHECK(f.matrices_checked == 14);
  bool found = false;
  for (const auto& w : f.t1_witnesses)
    if (w.seed == 0 && w.j == 0 && w.w == IntVec{0, 0, 0, 0, -1, 1}) found = true;
  CHECK(found);
  for (const auto& w : f.t1_witnesses) {
    IntVec back(w.matrix.rows(), 0);
    for (std::size_t i = 0; i < back.size(); ++i)
      for (std::size_t k = 0; k < w.lambda.size(); ++k) back[i] += w.matrix(i, k) * w.lambda[k];
    CHECK(back == w.w);
  }

  // x x' = s + 1 admits no strictly positive grading and every w = (0, c), c >= 1, passes
  // the box, so T1 fails; with a second frozen variable the box closes.
  PropertyReport a1f = check_t1(enumerate(bundled_seed("a1_frozen")), std::nullopt, Int{6});
  CHECK_FALSE(a1f.holds);
  // Seed 0: c = 1..6. Seed 1 (column -1): c = 2..6.
  REQUIRE(a1f.t1_witnesses.size() == 11);
  CHECK(a1f.t1_witnesses.front().w == IntVec{0, 1});
  CHECK_THROWS_AS(check_t1(enumerate(bundled_seed("a1_frozen"))), InputError);
  CHECK(check_t1(enumerate(seed_from_rows({{0}, {1}, {-1}}, 1))).holds);
  // The witness list does not depend on the thread count.
  PropertyReport threaded = check_t1(bad, std::nullopt, std::nullopt, 4);
  REQUIRE(threaded.t1_witnesses.size() == f.t1_witnesses.size());
  for (std::size_t i = 0; i < f.t1_witnesses.size(); ++i) {
    CHECK(threaded.t1_witnesses[i].seed == f.t1_witnesses[i].seed);
    CHECK(threaded.t1_witnesses[i].w == f.t1_witnesses[i].w);
  }
  CHECK_THROWS_AS(check_t1(enumerate(bundled_seed("g2"))), InputError);
}

TEST_CASE("one repair row removes the A3 witness") {
  Seed bad = bundled_seed("a3_bad");
  Atlas a = enumerate(bad, AtlasOptions{1000, false});
  PropertyReport f = check_t1(a);
  const T1Witness* wit = nullptr;
  for (const auto& w : f.t1_witnesses)
    if (w.seed == 0 && w.j == 0 && w.w == IntVec{0, 0, 0, 0, -1, 1}) wit = &w;
  REQUIRE(wit);
  IntVec row = repair_row(*wit);
  CHECK(std::count(row.begin(), row.end(), 0) == 2);
  std::size_t k = static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](Int x) { return x != 0; }) - row.begin());
  CHECK(k != 0);
  CHECK(wit->lambda[k] != 0);
  CHECK(row[k] == (wit->lambda[k] > 0 ? -1 : 1));

  IntMatrix bigger = bad.matrix.entries();
  bigger.append_row(row);
  IntVec lifted(bigger.rows(), 0);
  for (std::size_t i = 0; i < bigger.rows(); ++i)
    for (std::size_t c = 0; c < 3; ++c) lifted[i] += bigger(i, c) * wit->lambda[c];
  auto sols = t1_solutions(bigger, 3, 0, std::nullopt, Int{4});
  CHECK(std::find(sols.begin(), sols.end(), lifted) == sols.end());
}

TEST_CASE("repair_t1") {
  Seed bad = bundled_seed("a3_bad");
  Seed fixed = repair_t1(bad);
  CHECK(fixed.matrix.m() > bad.matrix.m());
  for (std::size_t i = 0; i < bad.matrix.m(); ++i)
    for (std::size_t c = 0; c < 3; ++c) CHECK(fixed.matrix(i, c) == bad.matrix(i, c));
  Atlas a = enumerate(fixed, AtlasOptions{1000, false});
  CHECK(check_t1(a).holds);
  CHECK(find_strictly_positive_grading(a));
  CHECK(rank_flags(fixed.matrix).full_rank);
  CHECK(repair_t1(fixed).matrix == fixed.matrix);

  Seed a2 = bundled_seed("a2");
  CHECK(repair_t1(a2).matrix == a2.matrix);
  CHECK_THROWS_AS(repair_t1(bundled_seed("a1")), InputError);
}

TEST_CASE("semigroup membership agrees with exhaustive search") {
  for (std::string name : {"a2", "b2"}) {
    Seed s = bundled_seed(name);
    Atlas base = enumerate(s);
    SemigroupData sg = make_semigroup(build_universal(base));
    const IntVec& u = sg.positive_functional;
    auto pair = [&](const IntVec& x) {
      Int r = 0;
      for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * x[i];
      return r;
    };
    for (const auto& g : sg.generators) CHECK(pair(g) >= 1);

    // Every combination up to the functional bound.
    Int cap = 0;
    for (const auto& g : sg.generators) cap = std::max(cap, pair(g));
    cap *= 3;
    const std::set<IntVec> reachable = oracle::semigroup_elements(sg, cap);
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, sg.generators.size() - 1);
    std::uniform_int_distribution<int> coin(0, 1), slot(0, static_cast<int>(u.size()) - 1), delta(-1, 1);
    std::size_t members = 0;
    for (int trial = 0; trial < 50; ++trial) {
      IntVec t(u.size(), 0);
      for (int r = 0; r < 3; ++r)
        if (coin(rng)) {
          const IntVec& g = sg.generators[pick(rng)];
          for (std::size_t c = 0; c < t.size(); ++c) t[c] += g[c];
        }
      if (coin(rng)) t[slot(rng)] += delta(rng);
      if (pair(t) > cap) continue;
      INFO(name << " trial " << trial);
      bool member = in_semigroup(sg, t);
      members += member;
      CHECK(member == (reachable.count(t) > 0));
    }
    CHECK(members > 0);
  }
}

TEST_CASE("T0 on the running example and a failing A2 seed") {
  Seed a2 = bundled_seed("a2");
  Atlas a = enumerate(a2);
  GradingData gd = m_grading(a2.matrix);
  IntVec ones(5, 1);
  CHECK(check_t0(a, join_ideal(a), gd, ones).holds);

  // x1 and its second mutation share an H-degree with the first frozen variable.
  Seed s = seed_from_rows({{0, 1}, {-1, 0}, {-1, -1}, {1, 0}}, 2);
  Atlas b = enumerate(s);
  auto d = find_strictly_positive_grading(b);
  REQUIRE(d);
  PropertyReport r = check_t0(b, join_ideal(b), m_grading(s.matrix), *d);
  CHECK_FALSE(r.holds);
  GradingData sgd = m_grading(s.matrix);
  for (const auto& w : r.derivation_witnesses) {
    HDegree total = sgd.zero();
    for (std::size_t id = 0; id < w.alpha.size(); ++id)
      for (Int c = 0; c < w.alpha[id]; ++c) total = sgd.add(total, variable_degree(sgd, b, id));
    CHECK(total == variable_degree(sgd, b, w.v));
    REQUIRE(w.witness_w);
    IntVec moved = w.alpha;
    moved[*w.witness_w] += 1;
    MonomialIdeal j = join_ideal(b);
    CHECK_FALSE(j.contains(moved));
    IntVec pair(w.alpha.size(), 0);
    pair[w.v] = 1;
    pair[*w.witness_w] = 1;
    CHECK(j.contains(pair));
  }

  MonomialIdeal empty{join_ideal(a).variables, {}};
  CHECK(check_t0(a, empty, gd, ones).holds);
  CHECK_THROWS_AS(check_t0(a, join_ideal(a), gd, IntVec{1, 1, 1, 1, 2}), InputError);
}

TEST_CASE("T0* on the running example") {
  Seed a2 = bundled_seed("a2");
  Atlas a = enumerate(a2);
  SemigroupData sg = make_semigroup(build_universal(a));
  PropertyReport r = check_t0_star(a, join_ideal(a), sg, IntVec(5, 1));
  CHECK(r.holds);
  CHECK_FALSE(r.semigroup_probes.empty());
  // No J-non-trivial derivation has its degree in the semigroup.
  for (const auto& p : r.semigroup_probes) CHECK_FALSE(p.j_nontrivial);
}

TEST_CASE("G2 octagon: a non-trivial derivation that is not exchangeable") {
  Atlas g2 = enumerate(bundled_seed("g2"));
  SimplicialComplex k = cluster_complex(g2);
  const std::size_t nz = g2.variables().size();
  // Octagon distance from vertex 0.
  std::vector<int> dist(nz, -1);
  std::queue<std::size_t> q;
  dist[0] = 0;
  q.push(0);
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop();
    for (const auto& f : k.facets())
      if (std::count(f.begin(), f.end(), v))
        for (auto w : f)
          if (dist[w] < 0) dist[w] = dist[v] + 1, q.push(w);
  }
  std::size_t opposite = static_cast<std::size_t>(std::find(dist.begin(), dist.end(), 4) - dist.begin());
  REQUIRE(opposite < nz);
  MonomialIdeal j = join_ideal(g2);
  IntVec alpha(nz, 0);
  alpha[opposite] = 1;
  DerivationProbe p = probe_derivation(g2, j, 0, alpha);
  CHECK(p.j_nontrivial);
  CHECK_FALSE(p.exchangeable);
  REQUIRE(p.witness_w);
  IntVec zz(nz, 0);
  zz[0] = 1;
  zz[*p.witness_w] += 1;
  CHECK(j.contains(zz));
  CHECK_FALSE(g2.find_pair(0, *p.witness_w));

  // Distance two: exchangeable.
  std::size_t near = static_cast<std::size_t>(std::find(dist.begin(), dist.end(), 2) - dist.begin());
  alpha.assign(nz, 0);
  alpha[near] = 1;
  auto e = probe_derivation(g2, j, 0, alpha);
  CHECK(e.j_nontrivial);
  CHECK(e.exchangeable);
  // z_v d/dz_v acts trivially.
  alpha.assign(nz, 0);
  alpha[0] = 1;
  CHECK_FALSE(probe_derivation(g2, j, 0, alpha).j_nontrivial);

  // With coefficients making it positively graded, T0* holds.
  Seed graded = add_frozen_for_positivity(bundled_seed("g2"));
  Checked c = check_both(graded);
  CHECK(c.t0_star);
}

TEST_CASE("T0 implies T0*") {
  std::vector<Seed> inputs{bundled_seed("a2"), bundled_seed("gr26"), add_frozen_for_positivity(bundled_seed("b2")),
                           add_frozen_for_positivity(bundled_seed("a1xa1")),
                           seed_from_rows({{0, 1}, {-1, 0}, {-1, -1}, {1, 0}}, 2),
                           add_frozen_for_positivity(bundled_seed("a3"))};
  std::size_t t0_count = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    INFO("input " << i);
    Checked c = check_both(inputs[i]);
    t0_count += c.t0;
    if (c.t0) CHECK(c.t0_star);
  }
  CHECK(t0_count > 0);
}
