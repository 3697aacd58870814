#pragma once

#include <stdexcept>
#include <string>

namespace cdf {

// Malformed or out-of-contract input.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A search bound (seeds, orders) was hit before the computation finished.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The deformation lift has no solution at some order.
class ObstructedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cdf
