#pragma once

#include <string>
#include <vector>

#include "cdf/complex.hpp"
#include "cdf/lattice.hpp"
#include "cdf/poly.hpp"
#include "cdf/universal.hpp"

namespace cdf {

struct OrderStats {
  std::size_t order = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t nullity = 0;       // dimension of the solution space
  std::size_t corrections = 0;   // nonzero terms added
  bool tie_broken = false;       // several minimal representatives existed
  bool greedy = false;           // vertex search too large, greedy choice used
};

// Generators over the ring z_0..z_{nz-1}, t_1..t_p (z indexed by base variable id).
struct DeformationFamily {
  RingPtr ring;
  std::size_t num_z = 0, num_t = 0;
  std::vector<IntVec> t_degrees;  // deg_T(t_i) over z ids
  IntVec weight;                  // interior Groebner weight over z ids
  MonomialOrder ordering;         // weight on z, zero on t
  MonomialIdeal order_zero;       // J
  std::vector<LaurentPoly> generators;
  std::vector<IntVec> leading;    // SR monomial of each generator, over z ids
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> exchangeable;
  std::size_t order = 0;
  std::vector<OrderStats> stats;

  // T-degree of a ring monomial: z part plus sum of t exponents times deg_T(t_i).
  IntVec t_degree(const IntVec& exponent) const;
  Int t_order(const IntVec& exponent) const;
};

struct MinimalChoice {
  QVec values;
  bool tie = false;     // another point with the same support counts exists
  bool greedy = false;  // too many candidates; coordinates were zeroed greedily
};

// Point of p + span(nullspace) with the fewest nonzeros on exchangeable coordinates,
// then on the others, then lexicographically smallest among vertices of the
// coordinate arrangement.
MinimalChoice exchange_minimal(const AffineSolution& sol, const std::vector<bool>& exchangeable);

// Each exchangeable generator z_v z_w gets -t_i z^a for every coefficient it owns.
// Throws InputError on degenerate vertices.
DeformationFamily first_order(const UniversalData& u);

// Lifts order by order until the generators form a Groebner basis over K[t].
// ObstructedError("obstructed at order k"), BudgetError("order budget exceeded").
DeformationFamily lift(DeformationFamily family, std::size_t max_order = 16);

// Every S-pair of non-coprime leading monomials reduces to zero without truncation.
bool is_flat(const DeformationFamily& family);

struct FamilyReport {
  bool fiber_ok = false;        // t = 0 gives J
  bool laurent_ok = false;      // t = 1 vanishes on Laurent expansions
  bool exchange_ok = false;     // exchangeable generators equal the universal relations
  bool equivariant_ok = false;  // every term has the T-degree of its leading monomial
  bool leading_ok = false;      // leading term is the SR monomial with coefficient 1
  std::size_t exchange_checked = 0;
  std::size_t extra_relations = 0;
  std::vector<std::string> failures;
  bool ok() const { return fiber_ok && laurent_ok && exchange_ok && equivariant_ok && leading_ok; }
};

// u.base must carry Laurent expansions.
FamilyReport verify_family(const DeformationFamily& family, const UniversalData& u);

}  // namespace cdf
