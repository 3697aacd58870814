#pragma once

#include <optional>
#include <vector>

#include "cdf/atlas.hpp"
#include "cdf/lattice.hpp"

namespace cdf {

// An element of M = Z^d x Z/t_1 x ... x Z/t_r.
struct HDegree {
  IntVec free;
  IntVec torsion;  // residues in [0, t_j)
  bool operator==(const HDegree&) const = default;
  auto operator<=>(const HDegree&) const = default;
};

// M = coker(B~) computed from the Smith form of B~.
struct GradingData {
  std::size_t free_rank = 0;
  IntVec torsion;         // moduli > 1
  IntMatrix initial_free;     // m x free_rank, row i = free part of deg_H(x_i)
  IntMatrix initial_torsion;  // m x torsion.size()
  SnfResult snf;

  // deg_H of the monomial with exponent vector e over the initial variables.
  HDegree degree(const IntVec& e) const;
  HDegree add(const HDegree& a, const HDegree& b) const;
  HDegree zero() const;
};

GradingData m_grading(const ExchangeMatrix& b);

// deg_H of an atlas variable: g-vector times the initial degrees.
HDegree variable_degree(const GradingData& gd, const Atlas& atlas, std::size_t id);

// Re-express the free part in the basis given by the degrees of the listed initial
// variables. Requires a torsion-free M and a unimodular change of basis.
GradingData rebase(const GradingData& gd, const std::vector<std::size_t>& basis_rows);

struct RankFlags {
  bool full_rank = false;
  bool full_z_rank = false;
};
RankFlags rank_flags(const ExchangeMatrix& b);

// Integer D (length m) with B~^T D = 0 and g.D >= 1 on every mutable variable.
std::optional<IntVec> find_positive_grading(const Atlas& atlas);
// Additionally every frozen variable has degree >= 1.
std::optional<IntVec> find_strictly_positive_grading(const Atlas& atlas);

// Adds n rows with -|c| on the diagonal and one balancing row so that (1, ..., 1)
// grades the result; every cluster variable then has degree >= 1.
Seed add_frozen_for_positivity(const Seed& seed, std::size_t max_seeds = 100000);

}  // namespace cdf
