#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdf/atlas.hpp"
#include "cdf/complex.hpp"
#include "cdf/gradings.hpp"
#include "cdf/universal.hpp"

namespace cdf {

enum class Property { t0, t0_star, t1 };
std::string property_name(Property p);

// w = matrix * lambda lies in the T1 box of column j but is neither 0 nor -B_j.
struct T1Witness {
  std::size_t seed = 0, j = 0;
  IntMatrix matrix;
  IntVec w, lambda;
};

// A derivation z^alpha d/dz_v probed against J.
struct DerivationProbe {
  std::size_t v = 0;
  IntVec alpha;  // over atlas variable ids
  bool j_nontrivial = false;
  bool exchangeable = false;
  std::optional<std::size_t> witness_w;  // certifies non-triviality, exchangeable when possible
};

struct PropertyReport {
  Property property = Property::t1;
  bool holds = true;
  std::size_t matrices_checked = 0;
  std::vector<T1Witness> t1_witnesses;
  std::vector<DerivationProbe> derivation_witnesses;
  // T0*: every probe whose degree lies in the semigroup.
  std::vector<DerivationProbe> semigroup_probes;
};

// Every stored seed and every column j. Without a grading or a bound a strictly
// positive grading is searched for; InputError when none exists.
PropertyReport check_t1(const Atlas& atlas, const std::optional<IntVec>& grading = std::nullopt,
                        std::optional<Int> bound = std::nullopt, std::size_t threads = 1);

// Frozen row (in the witness seed's coordinates) that removes the witness.
IntVec repair_row(const T1Witness& witness);

// Adds frozen rows until every matrix in the class satisfies T1, then restores a
// strictly positive grading if needed. Throws InputError when B~ lacks full rank.
Seed repair_t1(const Seed& seed, std::size_t max_seeds = 100000);

// Degree weights g.D of all atlas variables; InputError unless D grades B~ and
// every weight is at least one.
IntVec strict_weights(const Atlas& atlas, const IntVec& grading);

DerivationProbe probe_derivation(const Atlas& atlas, const MonomialIdeal& j, std::size_t v, const IntVec& alpha);

PropertyReport check_t0(const Atlas& atlas, const MonomialIdeal& j, const GradingData& gd, const IntVec& grading);

struct SemigroupData {
  std::vector<IntVec> generators;  // -deg_T(t_i), over base variable ids
  IntVec positive_functional;      // <u, g> >= 1 on every nonzero generator
};

SemigroupData make_semigroup(const UniversalData& u);
bool in_semigroup(const SemigroupData& s, const IntVec& target);

PropertyReport check_t0_star(const Atlas& atlas, const MonomialIdeal& j, const SemigroupData& s,
                             const IntVec& grading);

}  // namespace cdf
