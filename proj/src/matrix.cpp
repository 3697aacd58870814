#include "cdf/matrix.hpp"

#include <numeric>
#include <sstream>

#include "cdf/errors.hpp"

namespace cdf {

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow");
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow");
  return out;
}

Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<Int>(z.get_si());
}

ZMatrix to_z(const IntMatrix& a) {
  ZMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = static_cast<long>(a(i, j));
  return out;
}

IntMatrix to_int(const ZMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_int(a(i, j));
  return out;
}

ZVec to_z(const IntVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (Int x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVec to_int(const ZVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int(x));
  return out;
}

ZMatrix multiply(const ZMatrix& a, const ZMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  ZMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(a(i, k), b(k, j)));
    }
  return out;
}

IntVec multiply(const IntVec& row, const IntMatrix& a) {
  if (row.size() != a.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntVec out(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (row[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[j] = checked_add(out[j], checked_mul(row[i], a(i, j)));
  }
  return out;
}

IntVec multiply(const IntMatrix& a, const IntVec& col) {
  if (col.size() != a.cols()) throw std::invalid_argument("matrix dimension mismatch");
  IntVec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[i] = checked_add(out[i], checked_mul(a(i, j), col[j]));
  return out;
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

mpz_class dot(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ZVec primitive(const ZVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::size_t rank(const QMatrix& a0) {
  QMatrix a = a0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      mpq_class f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const ZMatrix& a) {
  QMatrix q(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = a(i, j);
  return rank(q);
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace cdf
