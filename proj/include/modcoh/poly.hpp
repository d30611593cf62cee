#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modcoh/coeff.hpp"
#include "modcoh/errors.hpp"
#include "modcoh/ring.hpp"

namespace modcoh {

/// Exponent vector, one entry per ring variable. std::vector's operator<
/// is the lexicographic order, which is the canonical term order here.
using Exps = std::vector<int>;

inline Exps zero_exps(const RingPtr& ring) {
  return Exps(ring->var_count(), 0);
}

/// Sparse exact (Laurent) polynomial. Terms are kept in a map keyed by
/// exponent vector, so the representation is canonical and equality is
/// structural. Zero coefficients are never stored. Non-invertible
/// variables carry non-negative exponents in every term.
class Poly {
 public:
  using TermMap = std::map<Exps, Coeff>;

  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, Coeff c) {
    Poly p(std::move(ring));
    p.add_term(zero_exps(p.ring_), std::move(c));
    return p;
  }
  static Poly one(RingPtr ring) { return constant(std::move(ring), Coeff(1)); }
  static Poly variable(RingPtr ring, std::size_t var) {
    Poly p(std::move(ring));
    Exps e = zero_exps(p.ring_);
    e.at(var) = 1;
    p.add_term(std::move(e), Coeff(1));
    return p;
  }
  static Poly monomial(RingPtr ring, Exps exps, Coeff c = Coeff(1)) {
    Poly p(std::move(ring));
    p.add_term(std::move(exps), std::move(c));
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == zero_exps(ring_));
  }
  Coeff constant_value() const {
    if (terms_.empty()) return Coeff(0);
    if (!is_constant()) throw error("polynomial is not constant");
    return terms_.begin()->second;
  }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && constant_value().is_one(); }

  Coeff coeff_of(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  /// Lex-leading term. Precondition: nonzero.
  const std::pair<const Exps, Coeff>& leading_term() const {
    if (terms_.empty()) throw error("zero polynomial has no leading term");
    return *terms_.rbegin();
  }

  /// Total degree (max over terms of the exponent sum); -1 for the zero
  /// polynomial. For Laurent polynomials negative exponents count as is.
  int total_degree() const {
    int best = -1;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (first || s > best) best = s, first = false;
    }
    return best;
  }

  int min_exponent(std::size_t var) const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
    return m;
  }
  int max_exponent(std::size_t var) const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  void add_term(Exps exps, Coeff c) {
    if (exps.size() != ring_->var_count())
      throw error("exponent vector has wrong length");
    for (std::size_t j = 0; j < exps.size(); ++j)
      if (exps[j] < 0 && !ring_->is_invertible(j))
        throw error("negative exponent on non-invertible variable '" +
                    ring_->var_name(j) + "'");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(exps), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(ring_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    require_same_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    require_same_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_ring(a.ring_, b.ring_);
    Poly r(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Coeff c = ca * cb;
        if (c.is_zero()) continue;  // happens over dual numbers (eps*eps)
        Exps e(ea.size());
        for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
        r.add_term(std::move(e), std::move(c));
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Poly& a, const Coeff& c) {
    return a * Poly::constant(a.ring_, c);
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.ring_ != b.ring_ && *a.ring_ != *b.ring_) return false;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  // Lex order on the term maps; used only to sort values deterministically.
  friend bool operator<(const Poly& a, const Poly& b) {
    return a.terms_ < b.terms_;
  }

  /// p^n for n >= 0. For n < 0, p must be a unit (a single term with unit
  /// coefficient and exponents only on invertible variables).
  Poly pow(int n) const {
    if (n < 0) {
      Poly inv = unit_inverse();
      return inv.pow(-n);
    }
    Poly acc = Poly::one(ring_);
    Poly base = *this;
    for (int k = n; k > 0; k >>= 1) {
      if (k & 1) acc *= base;
      if (k > 1) base *= base;
    }
    return acc;
  }

  bool is_unit() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    if (!c.is_unit()) return false;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] != 0 && !ring_->is_invertible(j)) return false;
    return true;
  }

  Poly unit_inverse() const {
    if (!is_unit()) throw error("polynomial is not a unit");
    const auto& [e, c] = *terms_.begin();
    Exps inv(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) inv[j] = -e[j];
    return Poly::monomial(ring_, std::move(inv), c.inverse());
  }

  std::string to_string() const;

 private:
  RingPtr ring_;
  TermMap terms_;
};

/// Rereads p in a ring that extends p's ring by extra trailing variables.
inline Poly extend_to(const RingPtr& ext, const Poly& p) {
  const RingPtr& src = p.ring();
  if (ext->var_count() < src->var_count())
    throw error("target ring has fewer variables");
  for (std::size_t j = 0; j < src->var_count(); ++j)
    if (ext->var_name(j) != src->var_name(j))
      throw error("target ring does not extend the source ring");
  Poly out(ext);
  for (const auto& [e, c] : p.terms()) {
    Exps ee = e;
    ee.resize(ext->var_count(), 0);
    out.add_term(std::move(ee), c);
  }
  return out;
}

/// Exact division p / q. Returns the unique r with q*r = p, or nullopt if
/// no such ring element exists. q must be nonzero; over dual numbers its
/// leading coefficient must be a unit.
inline std::optional<Poly> exact_divide(const Poly& p, const Poly& q) {
  require_same_ring(p.ring(), q.ring());
  if (q.is_zero()) throw error("division by the zero polynomial");
  if (p.is_zero()) return Poly::zero(p.ring());

  const RingPtr& ring = p.ring();
  const std::size_t nv = ring->var_count();

  // Shift invertible-variable exponents so both operands become honest
  // polynomials; units do not affect divisibility.
  Exps shift_p(nv, 0), shift_q(nv, 0);
  for (std::size_t j = 0; j < nv; ++j)
    if (ring->is_invertible(j)) {
      shift_p[j] = -p.min_exponent(j);
      shift_q[j] = -q.min_exponent(j);
    }
  Poly pp = p * Poly::monomial(ring, shift_p);
  Poly qq = q * Poly::monomial(ring, shift_q);

  const auto& [lq_exps, lq_coeff] = qq.leading_term();
  if (!lq_coeff.is_unit())
    throw error("exact division needs a unit leading coefficient");
  const Coeff lq_inv = lq_coeff.inverse();

  Poly quotient(ring);
  Poly r = pp;
  while (!r.is_zero()) {
    const auto& [lr_exps, lr_coeff] = r.leading_term();
    Exps diff(nv);
    for (std::size_t j = 0; j < nv; ++j) {
      diff[j] = lr_exps[j] - lq_exps[j];
      if (diff[j] < 0) return std::nullopt;
    }
    Poly t = Poly::monomial(ring, std::move(diff), lr_coeff * lq_inv);
    quotient += t;
    r -= t * qq;
  }
  // Undo the shifts: p/q = (pp/qq) * x^(shift_q - shift_p).
  Exps unshift(nv);
  for (std::size_t j = 0; j < nv; ++j) unshift[j] = shift_q[j] - shift_p[j];
  return quotient * Poly::monomial(ring, std::move(unshift));
}

inline bool divides(const Poly& q, const Poly& p) {
  return exact_divide(p, q).has_value();
}

namespace detail {

inline void append_term_text(std::string& out, const Rational& coeff,
                             bool eps_factor, const std::string& mono) {
  const bool neg = coeff < 0;
  Rational mag = neg ? Rational(-coeff) : coeff;
  mag.canonicalize();
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  std::string head;
  if (mag != 1 || (!eps_factor && mono.empty())) head = mag.get_str();
  if (eps_factor) {
    if (!head.empty()) head += "*";
    head += "eps";
  }
  if (!mono.empty()) {
    if (!head.empty()) head += "*";
    head += mono;
  }
  out += head;
}

}  // namespace detail

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Lex-descending display order, real part before eps part.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->var_name(j);
      if (e[j] != 1) mono += "^" + std::to_string(e[j]);
    }
    if (c.re() != 0) detail::append_term_text(out, c.re(), false, mono);
    if (c.eps_part() != 0)
      detail::append_term_text(out, c.eps_part(), true, mono);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << p.to_string();
}

}  // namespace modcoh
