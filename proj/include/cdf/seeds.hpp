#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdf/matrix.hpp"

namespace cdf {

// m x n integer matrix whose top n x n block is skew-symmetrizable.
// Indices are 0-based throughout the library.
class ExchangeMatrix {
public:
  ExchangeMatrix() = default;
  // Validates the top block and computes a symmetrizer when none is given.
  ExchangeMatrix(IntMatrix entries, std::size_t n, std::optional<IntVec> symmetrizer = std::nullopt);

  std::size_t n() const { return n_; }
  std::size_t m() const { return entries_.rows(); }
  const IntMatrix& entries() const { return entries_; }
  const IntVec& symmetrizer() const { return d_; }
  Int operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  // Top n x n block.
  IntMatrix principal() const;
  // Same top block, frozen rows replaced.
  ExchangeMatrix with_frozen(const std::vector<IntVec>& frozen_rows) const;
  ExchangeMatrix append_rows(const std::vector<IntVec>& rows) const;
  // Transpose of the top block, no frozen rows.
  ExchangeMatrix transpose_principal() const;

  bool operator==(const ExchangeMatrix& o) const { return n_ == o.n_ && entries_ == o.entries_; }

private:
  IntMatrix entries_;
  std::size_t n_ = 0;
  IntVec d_;
};

// Positive d with d_i b_ij = -d_j b_ji, minimal on each component; absent if none.
std::optional<IntVec> skew_symmetrizer(const IntMatrix& b);

ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k);

// Mutation rule applied to an arbitrary m x n matrix (used for stacked blocks).
IntMatrix mutate_entries(const IntMatrix& b, std::size_t k);

// E_{k,sign}: identity off column k, -1 at (k,k), max(0, -sign b_ik) at (i,k).
IntMatrix e_matrix(const ExchangeMatrix& b, std::size_t k, int sign);

struct Seed {
  ExchangeMatrix matrix;
  std::vector<std::string> var_ids;  // length m, frozen ids last
  std::optional<IntMatrix> grading;  // m x d, B^T D = 0
};

Seed make_seed(ExchangeMatrix matrix, std::vector<std::string> labels = {},
               std::optional<IntMatrix> grading = std::nullopt);

// Matrix mutation, fresh id at position k, D' = E_{k,+}^T D.
Seed mutate(const Seed& s, std::size_t k);

// B^T D == 0.
bool is_graded(const ExchangeMatrix& b, const IntMatrix& d);

// Connected components of the diagram of the top block (edge when b_ij != 0).
std::vector<std::vector<std::size_t>> diagram_components(const ExchangeMatrix& b);

struct FiniteTypeResult {
  bool finite = false;
  std::vector<std::string> components;  // Dynkin labels, "not finite" for failing components
};

// Tests the Cartan counterpart of each component on this representative only.
FiniteTypeResult classify_finite_type(const ExchangeMatrix& b);

bool is_isolated_vertex_free(const ExchangeMatrix& b);

}  // namespace cdf
