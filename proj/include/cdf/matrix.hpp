#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cdf {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

// Checked 64-bit arithmetic for exponents and matrix entries.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int to_int(const mpz_class& z);

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using ZMatrix = Matrix<mpz_class>;
using QMatrix = Matrix<mpq_class>;

ZMatrix to_z(const IntMatrix& a);
IntMatrix to_int(const ZMatrix& a);
ZVec to_z(const IntVec& v);
IntVec to_int(const ZVec& v);

ZMatrix multiply(const ZMatrix& a, const ZMatrix& b);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVec multiply(const IntVec& row, const IntMatrix& a);  // row * a
IntVec multiply(const IntMatrix& a, const IntVec& col);  // a * col

Int dot(const IntVec& a, const IntVec& b);
mpz_class dot(const ZVec& a, const ZVec& b);

// Divide by the gcd of the entries; zero stays zero.
ZVec primitive(const ZVec& v);

// Rank over Q.
std::size_t rank(const QMatrix& a);
std::size_t rank(const ZMatrix& a);

std::string to_string(const IntVec& v);

}  // namespace cdf
