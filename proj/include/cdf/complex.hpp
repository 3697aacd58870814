#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "cdf/atlas.hpp"

namespace cdf {

using Face = std::vector<std::size_t>;  // sorted vertex ids

// Stored by facets; faces are produced on demand.
class SimplicialComplex {
public:
  SimplicialComplex() = default;
  // Facets are sorted and non-maximal ones dropped. Vertices default to the union of the facets.
  SimplicialComplex(std::vector<std::size_t> vertices, std::vector<Face> facets);

  const std::vector<std::size_t>& vertices() const { return vertices_; }
  const std::vector<Face>& facets() const { return facets_; }

  bool contains(const Face& f) const;
  std::set<Face> faces() const;  // includes the empty face
  std::vector<std::size_t> f_vector() const;  // f_vector()[i] = number of faces with i vertices
  std::vector<Face> minimal_non_faces() const;
  bool is_pure() const;
  int dimension() const;  // -1 for the void/empty complex

  bool operator==(const SimplicialComplex&) const = default;

private:
  std::vector<std::size_t> vertices_;
  std::vector<Face> facets_;
};

struct MonomialIdeal {
  std::vector<std::size_t> variables;  // ids, one per exponent slot
  std::vector<IntVec> generators;      // minimal, sorted lexicographically (descending)

  // Whether the monomial with these exponents (over variables) lies in the ideal.
  bool contains(const IntVec& exponent) const;
};

SimplicialComplex cluster_complex(const Atlas& atlas);

// Stanley-Reisner ideal of K joined with the simplex on cone_points.
MonomialIdeal sr_ideal(const SimplicialComplex& k, const std::vector<std::size_t>& cone_points = {});

SimplicialComplex link(const SimplicialComplex& k, const Face& face);
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);

bool is_flag(const SimplicialComplex& k);

struct SphereCheck {
  bool pseudomanifold = false;
  bool euler_ok = false;
};
SphereCheck sphere_check(const SimplicialComplex& k);

// Freezes the given positions of a stored seed, enumerates the smaller atlas and
// compares its complex with the link of those variables, matching by mutation paths.
bool link_matches_frozen_seed(const Atlas& atlas, std::size_t seed, const std::vector<std::size_t>& positions);

// Matches mutable variables of two atlases with the same principal part by
// mutation path and compares the complexes.
bool complexes_match_by_paths(const Atlas& a, const Atlas& b);

}  // namespace cdf
