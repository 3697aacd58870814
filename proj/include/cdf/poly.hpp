#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdf/matrix.hpp"

namespace cdf {

// Variable names plus which variables may carry negative exponents.
struct Ring {
  std::vector<std::string> names;
  std::vector<bool> invertible;

  std::size_t size() const { return names.size(); }
  bool operator==(const Ring&) const = default;
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, std::vector<bool> invertible = {});

class MonomialOrder;

class LaurentPoly {
public:
  using Terms = std::map<IntVec, mpq_class>;

  explicit LaurentPoly(RingPtr ring);

  static LaurentPoly constant(RingPtr ring, const mpq_class& c);
  static LaurentPoly variable(RingPtr ring, std::size_t i);
  static LaurentPoly monomial(RingPtr ring, IntVec exponent, const mpq_class& c = 1);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const IntVec& exponent, const mpq_class& c);

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const mpq_class& c) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const;

  LaurentPoly mul_monomial(const IntVec& exponent, const mpq_class& c = 1) const;
  LaurentPoly pow(unsigned e) const;

  // Quotient when this = q * d exactly inside the ring, else absent.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

  // Replace variable i by images[i]; images share one target ring. A negative
  // exponent requires the image to be a single term.
  LaurentPoly substitute(const std::vector<LaurentPoly>& images) const;

  // Same terms read in another ring with the same number of variables.
  LaurentPoly with_ring(RingPtr ring) const;

  // Terms in descending order under ord, or descending lex without one.
  std::vector<std::pair<IntVec, mpq_class>> sorted_terms(const MonomialOrder* ord = nullptr) const;
  std::string to_string(const MonomialOrder* ord = nullptr) const;

private:
  void check_ring(const LaurentPoly& o) const;
  RingPtr ring_;
  Terms terms_;
};

std::string monomial_string(const Ring& ring, const IntVec& exponent);

// Weight first, then total degree, then lex with variable 0 most significant.
class MonomialOrder {
public:
  MonomialOrder() = default;
  explicit MonomialOrder(IntVec weight) : weight_(std::move(weight)) {}

  const IntVec& weight() const { return weight_; }
  bool less(const IntVec& a, const IntVec& b) const;

private:
  IntVec weight_;
};

struct OrderLess {
  const MonomialOrder* ord;
  bool operator()(const IntVec& a, const IntVec& b) const { return ord->less(a, b); }
};

std::pair<IntVec, mpq_class> leading_term(const LaurentPoly& f, const MonomialOrder& ord);

// Drop every term whose degree in the masked variables exceeds max_degree.
struct Truncation {
  std::vector<bool> mask;
  Int max_degree = 0;
};

LaurentPoly normal_form(const LaurentPoly& f, const std::vector<LaurentPoly>& basis,
                        const MonomialOrder& ord,
                        const std::optional<Truncation>& trunc = std::nullopt);

LaurentPoly s_polynomial(const LaurentPoly& f, const LaurentPoly& g, const MonomialOrder& ord);

// Reduced monic Groebner basis by Buchberger's algorithm, sorted by leading monomial.
std::vector<LaurentPoly> groebner_basis(const std::vector<LaurentPoly>& generators,
                                        const MonomialOrder& ord);

bool divides(const IntVec& a, const IntVec& b);
IntVec lcm(const IntVec& a, const IntVec& b);
Int masked_degree(const IntVec& e, const std::vector<bool>& mask);

}  // namespace cdf
