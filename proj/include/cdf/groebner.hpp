#pragma once

#include <vector>

#include "cdf/cone.hpp"
#include "cdf/universal.hpp"

namespace cdf {

struct GroebnerCone {
  Cone cone;                           // over base variable ids
  std::vector<IntVec> dual_generators; // deg_T of every owned coefficient, sorted, distinct
  bool simplicial_mod_lineality = false;
  bool smooth_mod_lineality = false;
  IntVec interior_weight;
};

// Throws InputError on degenerate vertices.
GroebnerCone groebner_cone(const UniversalData& u);

// Sum of rays shifted along the lineality space to be non-negative, scaled to a
// primitive integer vector. Throws std::runtime_error unless it pairs positively
// with every nonzero dual generator.
IntVec interior_weight(const Cone& c, const std::vector<IntVec>& dual_generators);

}  // namespace cdf
