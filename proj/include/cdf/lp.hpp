#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cdf/matrix.hpp"

namespace cdf {

// minimize objective . x subject to the rows below; every variable is free.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::pair<QVec, mpq_class>> at_least;  // a . x >= b
  std::vector<std::pair<QVec, mpq_class>> equal;     // a . x == b
  QVec objective;                                    // empty: feasibility only
};

// Optimal vertex, or absent when infeasible. Throws std::runtime_error when unbounded.
std::optional<QVec> solve_lp(const LinearProgram& lp);

// Multiply by the lcm of the denominators.
ZVec clear_denominators(const QVec& v);

}  // namespace cdf
