#pragma once

#include <optional>
#include <vector>

#include "cdf/matrix.hpp"

namespace cdf {

// Rational polyhedral cone in canonical form: Hermite basis of the lineality
// lattice, primitive rays in the orthogonal complement of the lineality,
// sorted lexicographically.
struct Cone {
  std::size_t ambient_dim = 0;
  std::vector<ZVec> lineality;
  std::vector<ZVec> rays;
  std::optional<std::vector<ZVec>> inequality_form;

  bool same_canonical_form(const Cone& o) const {
    return ambient_dim == o.ambient_dim && lineality == o.lineality && rays == o.rays;
  }
};

// {w : <w, g> >= 0 for every generator g}, by double description.
Cone dual_cone(const std::vector<ZVec>& generators, std::size_t dim);
Cone dual_cone(const std::vector<IntVec>& generators, std::size_t dim);

// Rays, lineality vectors and their negatives.
std::vector<ZVec> cone_generators(const Cone& c);

bool contains(const Cone& c, const ZVec& x);

// Rays linearly independent.
bool is_simplicial(const Cone& c);
// Rays plus lineality span the ambient space.
bool is_full_dimensional(const Cone& c);
// Simplicial, and the primitive ray images in Z^d / lineality extend to a basis.
bool is_smooth(const Cone& c);

}  // namespace cdf
