#include <doctest.h>

#include <numeric>

#include "cdf/errors.hpp"
#include "cdf/gradings.hpp"
#include "cdf/seed_io.hpp"

using namespace cdf;

namespace {

HDegree monomial_degree(const GradingData& gd, const Atlas& a, const SparseMonomial& mono) {
  HDegree out = gd.zero();
  for (auto [id, e] : mono)
    for (Int k = 0; k < e; ++k) out = gd.add(out, variable_degree(gd, a, id));
  return out;
}

Int dot_g(const IntVec& g, const IntVec& d) {
  Int s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * d[i];
  return s;
}

}  // namespace

TEST_CASE("running example degrees in the frozen basis") {
  Seed s = bundled_seed("a2");
  Atlas a = enumerate(s);
  GradingData gd = rebase(m_grading(s.matrix), {2, 3, 4});
  CHECK(gd.free_rank == 3);
  CHECK(gd.torsion.empty());
  CHECK(gd.initial_free.transpose().to_rows() ==
        std::vector<IntVec>{{-1, 1, 1, 0, 0}, {1, -1, 0, 1, 0}, {1, 1, 0, 0, 1}});
  auto deg = [&](const IntVec& g) { return variable_degree(gd, a, *a.find_by_g(g)).free; };
  CHECK(deg({-1, 0, 0, 2, 0}) == IntVec{1, 1, -1});
  CHECK(deg({1, 0, 0, 0, 0}) == IntVec{-1, 1, 1});
  CHECK(deg({-1, 1, 0, 1, 0}) == IntVec{2, -1, 0});
  CHECK(deg({0, -1, 0, 1, 1}) == IntVec{-1, 2, 0});
  CHECK(deg({0, 1, 0, 0, 0}) == IntVec{1, -1, 1});
  CHECK(deg({0, 0, 1, 0, 0}) == IntVec{1, 0, 0});
  // Summing coordinates gives the all-ones grading.
  for (auto id : a.mutable_ids()) {
    auto f = variable_degree(gd, a, id).free;
    CHECK(std::accumulate(f.begin(), f.end(), Int{0}) == 1);
  }
  CHECK_THROWS_AS(rebase(m_grading(s.matrix), {0, 1, 2}), InputError);
}

TEST_CASE("torsion and trivial grading groups") {
  GradingData t = m_grading(ExchangeMatrix(IntMatrix::from_rows({{0, 2}, {-2, 0}}), 2));
  CHECK(t.free_rank == 0);
  CHECK(t.torsion == IntVec{2, 2});
  HDegree x1 = t.degree({1, 0}), x2 = t.degree({0, 1});
  CHECK(x1 != t.zero());
  CHECK(x2 != t.zero());
  CHECK(x1 != x2);
  CHECK(t.add(x1, x1) == t.zero());
  CHECK_THROWS_AS(rebase(t, {}), InputError);

  GradingData one = m_grading(ExchangeMatrix(IntMatrix::from_rows({{0, 1}, {-1, 0}}), 2));
  CHECK(one.free_rank == 0);
  CHECK(one.torsion.empty());

  GradingData a1 = m_grading(bundled_seed("a1").matrix);
  CHECK(a1.free_rank == 1);
}

TEST_CASE("rank flags") {
  auto f = rank_flags(bundled_seed("a2").matrix);
  CHECK(f.full_rank);
  CHECK(f.full_z_rank);
  auto g = rank_flags(bundled_seed("gr26").matrix);
  CHECK(g.full_rank);
  CHECK_FALSE(g.full_z_rank);
  auto z = rank_flags(bundled_seed("a1").matrix);
  CHECK_FALSE(z.full_rank);
  CHECK_FALSE(z.full_z_rank);
  auto b = rank_flags(ExchangeMatrix(IntMatrix::from_rows({{0, 2}, {-2, 0}}), 2));
  CHECK(b.full_rank);
  CHECK_FALSE(b.full_z_rank);
}

TEST_CASE("exchange relations are homogeneous") {
  for (std::string name : {"a2", "a3_bad", "b2", "g2", "gr26", "d4", "c3"}) {
    Atlas a = enumerate(bundled_seed(name), AtlasOptions{1000, false});
    GradingData gd = m_grading(a.initial_seed().matrix);
    for (const auto& p : a.exchange_pairs()) {
      INFO(name);
      HDegree lhs = gd.add(variable_degree(gd, a, p.v), variable_degree(gd, a, p.w));
      CHECK(lhs == monomial_degree(gd, a, p.plus));
      CHECK(lhs == monomial_degree(gd, a, p.minus));
    }
  }
}

TEST_CASE("degrees propagated by mutation equal g.D") {
  for (std::string name : {"a2", "gr26", "d4", "g2", "a3_bad"}) {
    Seed s = bundled_seed(name);
    Atlas a = enumerate(s, AtlasOptions{1000, false});
    GradingData gd = m_grading(s.matrix);
    if (gd.free_rank == 0) continue;
    s.grading = gd.initial_free;
    for (auto id : a.mutable_ids()) {
      const auto& v = a.variable(id);
      Seed cur = s;
      for (auto k : v.path) cur = mutate(cur, k);
      INFO(name << " " << v.name);
      CHECK(cur.grading->row(v.position) == variable_degree(gd, a, id).free);
    }
  }
}

TEST_CASE("positive gradings") {
  Atlas a = enumerate(bundled_seed("a2"));
  auto d = find_positive_grading(a);
  REQUIRE(d);
  CHECK(*d == IntVec{1, 1, 1, 1, 1});
  for (std::string name : {"a1", "a2", "a3", "b2", "g2", "a1xa1"}) {
    Atlas b = enumerate(bundled_seed(name), AtlasOptions{1000, false});
    if (b.m() == b.n()) {
      CHECK_FALSE(find_positive_grading(b));
      CHECK_FALSE(find_strictly_positive_grading(b));
    }
  }
  for (std::string name : {"a2", "d4", "gr26", "a3_bad"}) {
    Atlas b = enumerate(bundled_seed(name), AtlasOptions{1000, false});
    INFO(name);
    auto pos = find_positive_grading(b);
    auto strict = find_strictly_positive_grading(b);
    REQUIRE(pos);
    REQUIRE(strict);
    CHECK(is_graded(b.initial_seed().matrix, IntMatrix::from_rows({*pos}).transpose()));
    for (auto id : b.mutable_ids()) CHECK(dot_g(g_vector(b, id), *pos) >= 1);
    for (std::size_t i = 0; i < b.m(); ++i) CHECK((*strict)[i] >= 1);
  }
}

TEST_CASE("adding frozen variables for positivity") {
  auto check = [](const std::string& name, std::size_t expected_m) {
    Seed s = add_frozen_for_positivity(bundled_seed(name));
    CHECK(s.matrix.m() == expected_m);
    CHECK(s.matrix.principal() == bundled_seed(name).matrix.principal());
    REQUIRE(s.grading);
    Atlas a = enumerate(s, AtlasOptions{1000, false});
    IntVec ones(s.matrix.m(), 1);
    for (auto id : a.mutable_ids()) CHECK(dot_g(g_vector(a, id), ones) >= 1);
    return a;
  };
  Atlas g2 = check("g2", 5);
  CHECK(g2.mutable_ids().size() == 8);
  check("a1", 3);
  check("a2", 8);
  check("a3", 7);
  check("b3", 7);
  Seed a1 = add_frozen_for_positivity(bundled_seed("a1"));
  CHECK(a1.matrix.entries().to_rows() == std::vector<IntVec>{{0}, {-2}, {2}});
}
