#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "modcoh/coeff.hpp"
#include "modcoh/errors.hpp"

namespace modcoh {

/// Descriptor of a (Laurent) polynomial ring: named variables over Q or
/// Q[eps]/(eps^2), with a declared subset of invertible variables.
/// Non-invertible variables may only carry non-negative exponents.
class Ring {
 public:
  Ring(CoeffKind kind, std::vector<std::string> vars,
       std::vector<std::string> invertible = {})
      : kind_(kind), vars_(std::move(vars)), invertible_(vars_.size(), false) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == "eps")
        throw input_error("'eps' is reserved and cannot be a variable name");
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j])
          throw input_error("duplicate variable name '" + vars_[i] + "'");
    }
    for (const auto& v : invertible) invertible_[index_of(v)] = true;
  }

  static std::shared_ptr<const Ring> rationals(
      std::vector<std::string> vars, std::vector<std::string> invertible = {}) {
    return std::make_shared<const Ring>(CoeffKind::Rationals, std::move(vars),
                                        std::move(invertible));
  }
  static std::shared_ptr<const Ring> dual_numbers(
      std::vector<std::string> vars, std::vector<std::string> invertible = {}) {
    return std::make_shared<const Ring>(CoeffKind::DualNumbers, std::move(vars),
                                        std::move(invertible));
  }

  CoeffKind kind() const { return kind_; }
  std::size_t var_count() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(std::size_t i) const { return vars_[i]; }
  bool is_invertible(std::size_t i) const { return invertible_[i]; }
  bool any_invertible() const {
    return std::find(invertible_.begin(), invertible_.end(), true) !=
           invertible_.end();
  }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw input_error("unknown variable '" + name + "'");
  }
  bool has_var(const std::string& name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
  }

  /// Same ring with one more (non-invertible by default) variable appended.
  std::shared_ptr<const Ring> extended(const std::string& name,
                                       bool invertible = false) const {
    auto vars = vars_;
    vars.push_back(name);
    auto r = std::make_shared<Ring>(kind_, std::move(vars));
    r->invertible_ = invertible_;
    r->invertible_.push_back(invertible);
    return r;
  }

  /// Picks a variable name not already in use ("t", "t1", "t2", ...).
  std::string fresh_var(const std::string& stem = "t") const {
    if (!has_var(stem)) return stem;
    for (int i = 1;; ++i) {
      std::string cand = stem + std::to_string(i);
      if (!has_var(cand)) return cand;
    }
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.vars_ == b.vars_ &&
           a.invertible_ == b.invertible_;
  }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  CoeffKind kind_;
  std::vector<std::string> vars_;
  std::vector<bool> invertible_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || *a != *b)
    throw ring_mismatch_error("operands belong to different rings");
}

}  // namespace modcoh
