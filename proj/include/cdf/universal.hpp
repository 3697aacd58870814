#pragma once

#include <optional>
#include <vector>

#include "cdf/atlas.hpp"
#include "cdf/complex.hpp"

namespace cdf {

// One side of a relation with universal coefficients: t^t_exp * z^z_exp.
struct RelationSide {
  IntVec z;  // over base variable ids
  IntVec t;  // over coefficient indices
  bool frozen_only(const Atlas& base) const;
};

struct UniversalRelation {
  std::size_t v = 0, w = 0;  // base variable ids of the exchange pair, v < w
  RelationSide plus, minus;
  // Coefficient indices owned by each side: the side is t_i times a monomial while the
  // other side involves no mutable variable.
  std::vector<std::size_t> owned_plus, owned_minus;
};

struct UniversalData {
  Atlas base;
  IntMatrix u_rows;                 // p x n, sorted lexicographically
  std::vector<UniversalRelation> relations;
  // owner[i] = (relation index, +1 for the plus side / -1 for the minus side).
  std::vector<std::vector<std::pair<std::size_t, int>>> owners;

  std::size_t p() const { return u_rows.rows(); }
  std::size_t num_z() const { return base.variables().size(); }
};

// base must be enumerated from the seed of interest.
UniversalData build_universal(const Atlas& base, std::size_t max_seeds = 100000);

// A mutable column of B~ that is entirely zero makes both sides of its relation
// coefficient-only and the characteristic map degenerate.
bool has_degenerate_vertex(const ExchangeMatrix& b);

// deg_T(t_i) = e_v + e_w - z-exponent of the owning side, over base variable ids.
// Throws InputError on degenerate vertices.
std::vector<IntVec> t_degrees(const UniversalData& u);

struct FiberAtZero {
  std::vector<IntVec> monomials;  // z_v z_w for every relation, over base variable ids
  bool all_generators = false;    // each is a minimal generator of J
  bool both_sides_vanish = false;
};
FiberAtZero fiber_at_zero(const UniversalData& u, const MonomialIdeal& j);

// J = I_{K * simplex(frozen)} over all base variable ids in id order.
MonomialIdeal join_ideal(const Atlas& base);

}  // namespace cdf
