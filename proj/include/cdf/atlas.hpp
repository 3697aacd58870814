#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdf/poly.hpp"
#include "cdf/seeds.hpp"

namespace cdf {

// Sparse monomial over variable ids, sorted by id.
using SparseMonomial = std::vector<std::pair<std::size_t, Int>>;

struct ClusterVariable {
  std::size_t id = 0;
  std::string name;
  IntVec g_vector;                 // length m
  bool frozen = false;
  std::vector<std::size_t> path;   // mutations from the initial seed that first produce it
  std::size_t position = 0;        // its position in the seed reached by path
  std::optional<LaurentPoly> laurent;       // x_1..x_m, initial mutable ones invertible
  std::optional<LaurentPoly> principal;     // x_1..x_m, y_1..y_n
  std::optional<LaurentPoly> f_polynomial;  // y_1..y_n
};

struct SeedRecord {
  std::vector<std::size_t> cluster;  // variable id at each position, length m
  IntMatrix matrix;                  // m x n
  IntMatrix c_matrix;                // n x n, columns are c-vectors
  std::vector<std::size_t> path;     // labeled mutations producing this labeling
  std::vector<std::size_t> neighbor;
  // neighbor_position[k][i]: position in neighbor[k] of entry i of the labeled mutation at k.
  std::vector<std::vector<std::size_t>> neighbor_position;
};

struct ExchangePair {
  std::size_t v = 0, w = 0;  // v < w
  SparseMonomial plus, minus;
  std::size_t seed = 0, k = 0;  // first seed and direction where it occurs
};

struct AtlasOptions {
  std::size_t max_seeds = 100000;
  bool laurent = true;
};

// A labeled seed reached by following a path: stored seed plus, for each
// labeled position, the stored position.
struct LabeledSeed {
  std::size_t seed = 0;
  std::vector<std::size_t> position;
};

class Atlas {
public:
  const Seed& initial_seed() const { return initial_; }
  std::size_t n() const { return initial_.matrix.n(); }
  std::size_t m() const { return initial_.matrix.m(); }

  const std::vector<ClusterVariable>& variables() const { return variables_; }
  const std::vector<SeedRecord>& seeds() const { return seeds_; }
  const std::vector<ExchangePair>& exchange_pairs() const { return pairs_; }

  const ClusterVariable& variable(std::size_t id) const;
  std::optional<std::size_t> find_by_g(const IntVec& g) const;
  std::optional<std::size_t> find_pair(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> mutable_ids() const;
  std::vector<std::size_t> frozen_ids() const;
  // Mutable part of each cluster, sorted.
  std::vector<std::vector<std::size_t>> clusters() const;

  LabeledSeed follow_path(const std::vector<std::size_t>& path) const;
  // Variable at a position of a labeled seed.
  std::size_t variable_at(const LabeledSeed& s, std::size_t position) const;

  const RingPtr& laurent_ring() const { return laurent_ring_; }
  const RingPtr& principal_ring() const { return principal_ring_; }
  const RingPtr& y_ring() const { return y_ring_; }
  bool has_laurent() const { return has_laurent_; }

private:
  friend Atlas enumerate(const Seed& seed, const AtlasOptions& opts);
  Seed initial_;
  std::vector<ClusterVariable> variables_;
  std::vector<SeedRecord> seeds_;
  std::vector<ExchangePair> pairs_;
  std::map<IntVec, std::size_t> by_g_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index_;
  RingPtr laurent_ring_, principal_ring_, y_ring_;
  bool has_laurent_ = false;
};

// Breadth-first enumeration of the exchange graph. Throws BudgetError
// ("enumeration budget exceeded") past max_seeds distinct clusters.
Atlas enumerate(const Seed& seed, const AtlasOptions& opts = {});

const LaurentPoly& laurent_expansion(const Atlas& atlas, std::size_t id);
const IntVec& g_vector(const Atlas& atlas, std::size_t id);

// Principal expansion equals x^g F(y-hat).
bool separation_holds(const Atlas& atlas, std::size_t id);
// g-vector read off the F-polynomial: tropical evaluation at the initial seed.
IntVec tropical_g_vector(const Atlas& atlas, std::size_t id);

// Exchange relation x_k x_k' = plus + minus read at a seed, as sparse monomials.
std::pair<SparseMonomial, SparseMonomial> exchange_monomials(const Atlas& atlas, std::size_t seed,
                                                             std::size_t k);

// Numerator polynomial and denominator exponent of a Laurent polynomial.
std::pair<LaurentPoly, IntVec> split_laurent(const LaurentPoly& f);

// First finite classification among all matrices of the mutation class.
FiniteTypeResult classify_mutation_class(const Atlas& atlas);

}  // namespace cdf
