#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdf/atlas.hpp"
#include "cdf/complex.hpp"
#include "cdf/universal.hpp"

namespace cdf {

// A nonzero family of graded pieces of T^1(K): b has support {v, w}, a is any
// non-negative vector with support omega.
struct T1Family {
  std::size_t seed = 0, k = 0;  // first seed and direction producing it
  std::size_t v = 0, w = 0;     // exchange pair, v < w
  Face omega;                   // mutable variable ids
};

std::vector<T1Family> t1_degree_families(const Atlas& atlas);

// An H-invariant degree a - b. a and b are indexed by atlas variable ids.
struct PinnedDegree {
  std::size_t seed = 0, k = 0;
  std::size_t v = 0, w = 0;
  IntVec a, b;
  IntVec witness;  // w in the seed's coordinates
  bool operator==(const PinnedDegree& o) const { return a == o.a && b == o.b; }
};

// All w in the integer column span of b (m x n) with w_j = 0 and the lower bounds
// w_i >= 1 - max(0, b_ij) (i < n, b_ij != 0), w_i >= -max(0, b_ij) otherwise.
// Upper bounds come from strictly positive degrees of the seed's variables
// (sum_i deg_i w_i = 0) and/or an explicit |w_i| <= bound.
std::vector<IntVec> t1_solutions(const IntMatrix& b, std::size_t n, std::size_t j,
                                 const std::optional<IntVec>& degrees, std::optional<Int> bound = std::nullopt);

// Degrees of the variables of a stored seed under an initial grading vector.
IntVec seed_degrees(const Atlas& atlas, std::size_t seed, const IntVec& grading);

// The exchange partner of position k in a stored seed.
std::size_t exchange_partner(const Atlas& atlas, std::size_t seed, std::size_t k);

// H-invariant degrees over all seeds, deduplicated by (a, b). Needs a strictly
// positive grading vector or a bound; throws InputError otherwise.
std::vector<PinnedDegree> t1_invariant(const Atlas& atlas, const std::optional<IntVec>& grading,
                                       std::optional<Int> bound = std::nullopt);

// One degree per coefficient: b the exchange monomial, a the owning side.
std::vector<PinnedDegree> characteristic_image(const UniversalData& u);

struct ObstructionClass {
  bool unobstructed = false;
  std::string reason;
};
// Unobstructed exactly when every component is simply laced.
ObstructionClass obstruction_class(const Atlas& atlas);

}  // namespace cdf
