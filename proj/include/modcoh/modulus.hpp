#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modcoh/divisor.hpp"
#include "modcoh/poly.hpp"
#include "modcoh/ring_map.hpp"

namespace modcoh {

/// Element numerator / f^fpower of A[1/f]. Canonical form keeps fpower
/// minimal, so equality of canonical elements is structural.
struct LocalizedElement {
  Poly numerator;
  int fpower = 0;

  friend bool operator==(const LocalizedElement& a, const LocalizedElement& b) {
    return a.fpower == b.fpower && a.numerator == b.numerator;
  }
};

/// Affine modulus datum (Spec A, (f)) with f in declared-factored form.
class AffineModulusPair {
 public:
  AffineModulusPair(RingPtr ring, FactoredDivisor modulus)
      : ring_(std::move(ring)), modulus_(std::move(modulus)) {
    require_same_ring(modulus_.ring(), ring_);
  }

  static AffineModulusPair parse(RingPtr ring, const std::string& modulus_text) {
    FactoredDivisor d = FactoredDivisor::parse(ring, modulus_text);
    return AffineModulusPair(std::move(ring), std::move(d));
  }

  const RingPtr& ring() const { return ring_; }
  const FactoredDivisor& modulus() const { return modulus_; }
  Poly modulus_poly() const { return modulus_.expand(); }

  /// num / f^k in canonical form (k minimal).
  LocalizedElement localize(Poly num, int k = 0) const {
    if (k < 0) throw error("negative modulus power");
    if (num.is_zero()) return {std::move(num), 0};
    const Poly f = modulus_poly();
    while (k > 0) {
      auto q = exact_divide(num, f);
      if (!q) break;
      num = std::move(*q);
      --k;
    }
    return {std::move(num), k};
  }

  /// Reads a quotient of polynomials as an element of A[1/f]; nullopt if
  /// the denominator divides no power of f.
  std::optional<LocalizedElement> from_frac(const Frac& q) const {
    static constexpr int kMaxPower = 64;
    if (q.num.is_zero()) return localize(Poly::zero(ring_), 0);
    Poly fk = Poly::one(ring_);
    const Poly f = modulus_poly();
    for (int k = 0; k <= kMaxPower; ++k) {
      if (auto c = exact_divide(fk, q.den)) return localize(q.num * *c, k);
      fk *= f;
    }
    return std::nullopt;
  }

  /// Laurent monomial with arbitrary integer exponents, read as an element
  /// of A[1/f] when possible.
  std::optional<LocalizedElement> from_laurent_exps(const Exps& exps,
                                                    Coeff c = Coeff(1)) const {
    Exps num(exps.size()), den(exps.size());
    for (std::size_t j = 0; j < exps.size(); ++j) {
      if (exps[j] >= 0 || ring_->is_invertible(j))
        num[j] = exps[j];
      else
        den[j] = -exps[j];
    }
    return from_frac(Frac(Poly::monomial(ring_, std::move(num), std::move(c)),
                          Poly::monomial(ring_, std::move(den))));
  }

  /// f * a as an element of A[1/f] (canonical form).
  LocalizedElement times_modulus(const LocalizedElement& a) const {
    if (a.fpower > 0) return localize(a.numerator, a.fpower - 1);
    return localize(a.numerator * modulus_poly(), 0);
  }

  std::string to_string(const LocalizedElement& a) const;

 private:
  RingPtr ring_;
  FactoredDivisor modulus_;
};

inline std::string AffineModulusPair::to_string(const LocalizedElement& a) const {
  if (a.fpower == 0) return a.numerator.to_string();

  // Cancel declared factors between numerator and f^fpower for display.
  Poly num = a.numerator;
  std::vector<std::pair<Poly, int>> den;
  for (const auto& [p, r] : modulus_.factors()) {
    int want = r * a.fpower;
    while (want > 0) {
      auto q = exact_divide(num, p);
      if (!q) break;
      num = std::move(*q);
      --want;
    }
    if (want > 0) den.emplace_back(p, want);
  }
  Rational u = 1;
  for (int i = 0; i < a.fpower; ++i) u *= modulus_.unit();
  num = num * Coeff(1 / u);

  if (den.empty()) return num.to_string();

  std::string den_str;
  bool den_needs_parens = den.size() > 1;
  for (const auto& [p, r] : den) {
    if (!den_str.empty()) den_str += "*";
    bool atom = p.is_monomial() && p.leading_term().second.is_one();
    std::string ps = p.to_string();
    if (!atom) {
      ps = "(" + ps + ")";
    } else if (r != 1 && ps.find('*') != std::string::npos) {
      ps = "(" + ps + ")";
    }
    den_str += ps;
    if (r != 1) den_str += "^" + std::to_string(r);
    if (atom && r == 1 && ps.find('*') != std::string::npos)
      den_needs_parens = true;
  }
  if (den_needs_parens) den_str = "(" + den_str + ")";

  std::string num_str = num.to_string();
  if (num.term_count() > 1) num_str = "(" + num_str + ")";
  return num_str + "/" + den_str;
}

// ---- pair specification files ------------------------------------------
//
// {
//   "variables":   ["x", "y"],
//   "invertible":  [],
//   "coefficients": "rationals" | "dual-numbers",
//   "unit":        "1",
//   "factors":     [["x", 3], ["y", 2]]
// }

inline AffineModulusPair pair_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
    std::vector<std::string> inv;
    if (j.contains("invertible"))
      inv = j.at("invertible").get<std::vector<std::string>>();
    CoeffKind kind = CoeffKind::Rationals;
    if (j.contains("coefficients")) {
      std::string k = j.at("coefficients").get<std::string>();
      if (k == "rationals")
        kind = CoeffKind::Rationals;
      else if (k == "dual-numbers")
        kind = CoeffKind::DualNumbers;
      else
        throw input_error("unknown coefficient ring '" + k + "'");
    }
    auto ring = std::make_shared<const Ring>(kind, std::move(vars), std::move(inv));
    Rational unit(1);
    if (j.contains("unit")) {
      unit = Rational(j.at("unit").get<std::string>());
      unit.canonicalize();
    }
    std::vector<std::pair<Poly, int>> factors;
    if (j.contains("factors"))
      for (const auto& f : j.at("factors")) {
        Poly p = parse_poly(ring, f.at(0).get<std::string>());
        factors.emplace_back(std::move(p), f.at(1).get<int>());
      }
    return AffineModulusPair(ring, FactoredDivisor(ring, unit, std::move(factors)));
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("malformed pair specification: ") + e.what());
  }
}

inline nlohmann::ordered_json pair_to_json(const AffineModulusPair& pair) {
  nlohmann::ordered_json j;
  j["variables"] = pair.ring()->vars();
  std::vector<std::string> inv;
  for (std::size_t i = 0; i < pair.ring()->var_count(); ++i)
    if (pair.ring()->is_invertible(i)) inv.push_back(pair.ring()->var_name(i));
  j["invertible"] = inv;
  j["coefficients"] = to_string(pair.ring()->kind());
  j["unit"] = pair.modulus().unit().get_str();
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& [p, r] : pair.modulus().factors())
    factors.push_back({p.to_string(), r});
  j["factors"] = factors;
  return j;
}

}  // namespace modcoh
