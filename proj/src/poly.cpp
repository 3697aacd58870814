#include "cdf/poly.hpp"

#include <algorithm>
#include <sstream>

#include "cdf/errors.hpp"

namespace cdf {

RingPtr make_ring(std::vector<std::string> names, std::vector<bool> invertible) {
  if (invertible.empty()) invertible.assign(names.size(), false);
  if (invertible.size() != names.size()) throw InputError("ring: invertibility mask length");
  return std::make_shared<const Ring>(Ring{std::move(names), std::move(invertible)});
}

LaurentPoly::LaurentPoly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("null ring");
}

LaurentPoly LaurentPoly::constant(RingPtr ring, const mpq_class& c) {
  LaurentPoly p(ring);
  p.add_term(IntVec(p.ring_->size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(RingPtr ring, std::size_t i) {
  IntVec e(ring->size(), 0);
  if (i >= e.size()) throw std::out_of_range("variable index");
  e[i] = 1;
  return monomial(std::move(ring), std::move(e));
}

LaurentPoly LaurentPoly::monomial(RingPtr ring, IntVec exponent, const mpq_class& c) {
  LaurentPoly p(std::move(ring));
  p.add_term(exponent, c);
  return p;
}

void LaurentPoly::add_term(const IntVec& e, const mpq_class& c) {
  if (c == 0) return;
  if (e.size() != ring_->size()) throw std::invalid_argument("exponent length mismatch");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !ring_->invertible[i])
      throw std::invalid_argument("negative exponent on non-invertible variable " + ring_->names[i]);
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_ring(const LaurentPoly& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw InputError("variable-set mismatch");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(ring_);
  out.terms_ = terms_;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  out += o;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  out -= o;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_ring(o);
  LaurentPoly out(ring_);
  IntVec e(ring_->size());
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(a[i], b[i]);
      out.add_term(e, ca * cb);
    }
  return out;
}

LaurentPoly LaurentPoly::operator*(const mpq_class& c) const {
  LaurentPoly out(ring_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  return (*ring_ == *o.ring_) && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::mul_monomial(const IntVec& m, const mpq_class& c) const {
  LaurentPoly out(ring_);
  IntVec e(ring_->size());
  for (const auto& [a, ca] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(a[i], m[i]);
    out.add_term(e, ca * c);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(ring_, 1);
  LaurentPoly base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
  check_ring(d);
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  const std::size_t n = ring_->size();
  if (is_zero()) return LaurentPoly(ring_);
  // Shift both into the polynomial range, divide in lex order, shift back.
  auto min_exp = [n](const Terms& t) {
    IntVec lo = t.begin()->first;
    for (const auto& [e, c] : t)
      for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], e[i]);
    return lo;
  };
  IntVec sf = min_exp(terms_), sd = min_exp(d.terms_);
  Terms r, dd;
  IntVec e(n);
  for (const auto& [a, c] : terms_) {
    for (std::size_t i = 0; i < n; ++i) e[i] = a[i] - sf[i];
    r.emplace(e, c);
  }
  for (const auto& [a, c] : d.terms_) {
    for (std::size_t i = 0; i < n; ++i) e[i] = a[i] - sd[i];
    dd.emplace(e, c);
  }
  const auto& [dlead, dcoef] = *dd.rbegin();
  Terms q;
  while (!r.empty()) {
    auto [rlead, rcoef] = *r.rbegin();
    IntVec shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = rlead[i] - dlead[i];
      if (shift[i] < 0) return std::nullopt;
    }
    mpq_class f = rcoef / dcoef;
    q[shift] += f;
    for (const auto& [a, c] : dd) {
      for (std::size_t i = 0; i < n; ++i) e[i] = a[i] + shift[i];
      auto [it, ins] = r.try_emplace(e, 0);
      it->second -= f * c;
      if (it->second == 0) r.erase(it);
    }
  }
  LaurentPoly out(ring_);
  for (const auto& [a, c] : q) {
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = a[i] + sf[i] - sd[i];
      if (e[i] < 0 && !ring_->invertible[i]) return std::nullopt;
    }
    out.add_term(e, c);
  }
  return out;
}

LaurentPoly LaurentPoly::substitute(const std::vector<LaurentPoly>& images) const {
  if (images.size() != ring_->size()) throw std::invalid_argument("substitute: image count");
  if (images.empty()) throw std::invalid_argument("substitute: empty ring");
  RingPtr target = images.front().ring();
  std::vector<std::optional<LaurentPoly>> inverses(images.size());
  LaurentPoly out(target);
  for (const auto& [e, c] : terms_) {
    LaurentPoly term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] > 0) {
        term = term * images[i].pow(static_cast<unsigned>(e[i]));
        continue;
      }
      if (!inverses[i]) {
        if (images[i].size() != 1) throw std::invalid_argument("substitute: cannot invert a non-monomial");
        const auto& [me, mc] = *images[i].terms().begin();
        IntVec neg(me.size());
        for (std::size_t j = 0; j < me.size(); ++j) neg[j] = -me[j];
        inverses[i] = monomial(target, neg, 1 / mc);
      }
      term = term * inverses[i]->pow(static_cast<unsigned>(-e[i]));
    }
    out += term;
  }
  return out;
}

LaurentPoly LaurentPoly::with_ring(RingPtr ring) const {
  if (ring->size() != ring_->size()) throw InputError("variable-set mismatch");
  LaurentPoly out(std::move(ring));
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

std::vector<std::pair<IntVec, mpq_class>> LaurentPoly::sorted_terms(const MonomialOrder* ord) const {
  std::vector<std::pair<IntVec, mpq_class>> out(terms_.begin(), terms_.end());
  if (ord) {
    std::sort(out.begin(), out.end(),
              [ord](const auto& a, const auto& b) { return ord->less(b.first, a.first); });
  } else {
    std::reverse(out.begin(), out.end());
  }
  return out;
}

std::string monomial_string(const Ring& ring, const IntVec& e) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << ring.names[i];
    if (e[i] != 1) os << '^' << e[i];
  }
  if (first) os << '1';
  return os.str();
}

std::string LaurentPoly::to_string(const MonomialOrder* ord) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted_terms(ord)) {
    mpq_class mag = abs(c);
    bool unit_monomial = std::all_of(e.begin(), e.end(), [](Int x) { return x == 0; });
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (unit_monomial) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << monomial_string(*ring_, e);
    }
  }
  return os.str();
}

bool MonomialOrder::less(const IntVec& a, const IntVec& b) const {
  if (!weight_.empty()) {
    Int wa = dot(weight_, a), wb = dot(weight_, b);
    if (wa != wb) return wa < wb;
  }
  Int da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db;
  return a < b;
}

std::pair<IntVec, mpq_class> leading_term(const LaurentPoly& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw std::invalid_argument("leading term of zero polynomial");
  auto it = f.terms().begin();
  auto best = it;
  for (++it; it != f.terms().end(); ++it)
    if (ord.less(best->first, it->first)) best = it;
  return *best;
}

bool divides(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

IntVec lcm(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Int masked_degree(const IntVec& e, const std::vector<bool>& mask) {
  Int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (mask[i]) d += e[i];
  return d;
}

LaurentPoly normal_form(const LaurentPoly& f, const std::vector<LaurentPoly>& basis,
                        const MonomialOrder& ord, const std::optional<Truncation>& trunc) {
  const RingPtr& ring = f.ring();
  for (bool inv : ring->invertible)
    if (inv) throw InputError("normal_form: invertible variables are not allowed");
  std::vector<std::pair<IntVec, mpq_class>> leads;
  leads.reserve(basis.size());
  for (const auto& g : basis) {
    if (!(*g.ring() == *ring)) throw InputError("variable-set mismatch");
    if (g.is_zero()) throw std::invalid_argument("normal_form: zero basis element");
    leads.push_back(leading_term(g, ord));
  }
  auto keep = [&](const IntVec& e) {
    return !trunc || masked_degree(e, trunc->mask) <= trunc->max_degree;
  };

  std::map<IntVec, mpq_class, OrderLess> work(OrderLess{&ord});
  for (const auto& [e, c] : f.terms())
    if (keep(e)) work.emplace(e, c);

  LaurentPoly rem(ring);
  IntVec shifted(ring->size());
  while (!work.empty()) {
    auto top = std::prev(work.end());
    IntVec e = top->first;
    mpq_class c = top->second;
    work.erase(top);
    std::size_t g = 0;
    while (g < basis.size() && !divides(leads[g].first, e)) ++g;
    if (g == basis.size()) {
      rem.add_term(e, c);
      continue;
    }
    mpq_class factor = c / leads[g].second;
    for (const auto& [ge, gc] : basis[g].terms()) {
      if (ge == leads[g].first) continue;
      for (std::size_t i = 0; i < ge.size(); ++i) shifted[i] = ge[i] + e[i] - leads[g].first[i];
      if (!keep(shifted)) continue;
      auto [it, ins] = work.try_emplace(shifted, 0);
      it->second -= factor * gc;
      if (it->second == 0) work.erase(it);
    }
  }
  return rem;
}

LaurentPoly s_polynomial(const LaurentPoly& f, const LaurentPoly& g, const MonomialOrder& ord) {
  auto [fe, fc] = leading_term(f, ord);
  auto [ge, gc] = leading_term(g, ord);
  IntVec l = lcm(fe, ge);
  IntVec sf(l.size()), sg(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sf[i] = l[i] - fe[i];
    sg[i] = l[i] - ge[i];
  }
  return f.mul_monomial(sf, 1 / fc) - g.mul_monomial(sg, 1 / gc);
}

std::vector<LaurentPoly> groebner_basis(const std::vector<LaurentPoly>& generators,
                                        const MonomialOrder& ord) {
  std::vector<LaurentPoly> basis;
  for (const auto& g : generators)
    if (!g.is_zero()) basis.push_back(g);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    LaurentPoly r = normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord);
    if (r.is_zero()) continue;
    for (std::size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
    basis.push_back(r);
  }
  // Minimalize, then inter-reduce.
  std::vector<LaurentPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    IntVec li = leading_term(basis[i], ord).first;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      IntVec lj = leading_term(basis[j], ord).first;
      if (divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<LaurentPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<LaurentPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    auto [le, lc] = leading_term(minimal[i], ord);
    LaurentPoly tail = minimal[i] - LaurentPoly::monomial(minimal[i].ring(), le, lc);
    LaurentPoly g = LaurentPoly::monomial(minimal[i].ring(), le, 1) +
                    normal_form(tail, others, ord) * (1 / lc);
    reduced.push_back(g);
  }
  std::sort(reduced.begin(), reduced.end(), [&ord](const LaurentPoly& a, const LaurentPoly& b) {
    return ord.less(leading_term(a, ord).first, leading_term(b, ord).first);
  });
  return reduced;
}

}  // namespace cdf
