#pragma once

#include <optional>
#include <vector>

#include "cdf/matrix.hpp"

namespace cdf {

// left * source * right = diag(diag), left and right unimodular.
struct SnfResult {
  std::vector<mpz_class> diag;  // length min(rows, cols), divisibility chain
  ZMatrix left;                 // rows x rows
  ZMatrix right;                // cols x cols
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
};

SnfResult smith_normal_form(const ZMatrix& a);
SnfResult smith_normal_form(const IntMatrix& a);

// Row Hermite normal form of the lattice spanned by the given vectors:
// echelon rows, positive pivots, entries above a pivot reduced into [0, pivot).
std::vector<ZVec> hermite_basis(const std::vector<ZVec>& generators, std::size_t dim);

// Basis of {x in Z^cols : a x = 0}.
std::vector<ZVec> integer_kernel(const ZMatrix& a);

// lambda with a * lambda = w over Z, if one exists.
std::optional<ZVec> lattice_coordinates(const ZVec& w, const ZMatrix& a);
std::optional<IntVec> lattice_coordinates(const IntVec& w, const IntMatrix& a);

// Determinant of a square integer matrix.
mpz_class determinant(const ZMatrix& a);

// Solutions of a x = b over Q as particular + span(nullspace).
struct AffineSolution {
  QVec particular;
  std::vector<QVec> nullspace;
};
std::optional<AffineSolution> solve_affine(const QMatrix& a, const QVec& b);

// Inverse of a square rational matrix; throws when singular.
QMatrix inverse(const QMatrix& a);

}  // namespace cdf
