#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcoh/parse.hpp"
#include "modcoh/poly.hpp"

namespace modcoh {

/// A modulus in declared-factored form: unit * prod p_i^{r_i} with the
/// p_i pairwise non-associate declared irreducibles and r_i >= 1.
/// Irreducibility itself is taken on trust; everything that can be
/// checked syntactically is checked here.
class FactoredDivisor {
 public:
  FactoredDivisor(RingPtr ring, Rational unit,
                  std::vector<std::pair<Poly, int>> factors)
      : ring_(std::move(ring)), unit_(std::move(unit)), factors_(std::move(factors)) {
    unit_.canonicalize();
    if (unit_ == 0) throw input_error("modulus unit must be nonzero");
    for (auto& [p, r] : factors_) {
      require_same_ring(p.ring(), ring_);
      if (r < 1) throw input_error("factor multiplicity must be >= 1");
      if (p.is_constant() || p.is_unit())
        throw input_error("constant factor in a modulus; fold it into the unit");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = i + 1; j < factors_.size(); ++j)
        if (divides(factors_[i].first, factors_[j].first) &&
            divides(factors_[j].first, factors_[i].first))
          throw input_error("declared factors '" + factors_[i].first.to_string() +
                            "' and '" + factors_[j].first.to_string() +
                            "' are associates");
    // Nonzero-divisor condition: automatic over Q; over Q[eps]/(eps^2) the
    // eps-free part must be nonzero.
    if (ring_->kind() == CoeffKind::DualNumbers) {
      Poly f = expand();
      bool re_nonzero = false;
      for (const auto& [e, c] : f.terms())
        if (c.re() != 0) re_nonzero = true;
      if (!re_nonzero)
        throw input_error("modulus is a zero divisor in the dual numbers");
    }
  }

  static FactoredDivisor one(RingPtr ring) {
    return FactoredDivisor(std::move(ring), Rational(1), {});
  }

  static FactoredDivisor parse(const RingPtr& ring, const std::string& text) {
    auto [unit, factors] = parse_factored(ring, text);
    if (!unit.is_rational())
      throw input_error("modulus unit must be rational");
    return FactoredDivisor(ring, unit.re(), std::move(factors));
  }

  const RingPtr& ring() const { return ring_; }
  const Rational& unit() const { return unit_; }
  const std::vector<std::pair<Poly, int>>& factors() const { return factors_; }
  bool is_unit_divisor() const { return factors_.empty(); }
  int max_multiplicity() const {
    int m = 0;
    for (const auto& [p, r] : factors_) m = std::max(m, r);
    return m;
  }

  Poly expand() const {
    Poly f = Poly::constant(ring_, Coeff(unit_));
    for (const auto& [p, r] : factors_) f *= p.pow(r);
    return f;
  }

  /// Multiplicity-stripped product of the declared irreducibles; generates
  /// the radical of (f) when the declaration is honest.
  Poly radical() const {
    Poly g = Poly::one(ring_);
    for (const auto& [p, r] : factors_) g *= p;
    return g;
  }

  /// f^n in factored form, n >= 0 (f^0 is the unit modulus).
  FactoredDivisor power(int n) const {
    if (n < 0) throw error("negative modulus power");
    std::vector<std::pair<Poly, int>> fs;
    if (n > 0)
      for (const auto& [p, r] : factors_) fs.emplace_back(p, r * n);
    Rational u = 1;
    for (int i = 0; i < n; ++i) u *= unit_;
    return FactoredDivisor(ring_, u, std::move(fs));
  }

  /// Same divisor viewed through a variable-wise embedding of rings.
  template <class EmbedFn>
  FactoredDivisor transported(const RingPtr& target, EmbedFn&& embed) const {
    std::vector<std::pair<Poly, int>> fs;
    for (const auto& [p, r] : factors_) fs.emplace_back(embed(p), r);
    return FactoredDivisor(target, unit_, std::move(fs));
  }

  /// If every declared factor is a scalar multiple of a single variable,
  /// returns var index -> multiplicity; otherwise nullopt.
  std::optional<std::map<std::size_t, int>> monomial_exponents() const {
    std::map<std::size_t, int> out;
    for (const auto& [p, r] : factors_) {
      if (!p.is_monomial()) return std::nullopt;
      const auto& [e, c] = *p.terms().begin();
      std::size_t var = 0;
      int seen = 0;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) {
          if (e[j] != 1) return std::nullopt;
          var = j;
          ++seen;
        }
      if (seen != 1) return std::nullopt;
      out[var] += r;
    }
    return out;
  }

  std::string to_string() const { return expand().to_string(); }

 private:
  RingPtr ring_;
  Rational unit_;
  std::vector<std::pair<Poly, int>> factors_;
};

}  // namespace modcoh
