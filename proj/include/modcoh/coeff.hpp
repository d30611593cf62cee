#pragma once

#include <gmpxx.h>

#include <string>

#include "modcoh/errors.hpp"

namespace modcoh {

using Rational = mpq_class;

enum class CoeffKind {
  Rationals,    // plain arbitrary-precision rationals
  DualNumbers,  // a + b*eps with eps^2 = 0, a and b rational
};

inline const char* to_string(CoeffKind k) {
  return k == CoeffKind::Rationals ? "rationals" : "dual-numbers";
}

/// Coefficient value a + b*eps. Over CoeffKind::Rationals the eps part is
/// identically zero; the arithmetic below works uniformly for both kinds.
class Coeff {
 public:
  Coeff() : re_(0), eps_(0) {}
  Coeff(Rational re) : re_(std::move(re)), eps_(0) { canonicalize(); }
  Coeff(long re) : re_(re), eps_(0) {}
  Coeff(Rational re, Rational eps) : re_(std::move(re)), eps_(std::move(eps)) {
    canonicalize();
  }

  static Coeff eps() { return Coeff(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& eps_part() const { return eps_; }

  bool is_zero() const { return re_ == 0 && eps_ == 0; }
  bool is_one() const { return re_ == 1 && eps_ == 0; }
  // Units of Q[eps]/(eps^2) are exactly the elements with nonzero real part.
  bool is_unit() const { return re_ != 0; }
  bool is_rational() const { return eps_ == 0; }

  Coeff operator-() const { return Coeff(-re_, -eps_); }

  Coeff& operator+=(const Coeff& o) {
    re_ += o.re_;
    eps_ += o.eps_;
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    re_ -= o.re_;
    eps_ -= o.eps_;
    return *this;
  }
  Coeff& operator*=(const Coeff& o) {
    // (a + b eps)(c + d eps) = ac + (ad + bc) eps
    Rational a = re_, b = eps_;
    re_ = a * o.re_;
    eps_ = a * o.eps_ + b * o.re_;
    canonicalize();
    return *this;
  }

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }

  Coeff inverse() const {
    if (!is_unit()) throw error("coefficient is not a unit");
    // 1/(a + b eps) = 1/a - (b/a^2) eps
    Rational inv = 1 / re_;
    return Coeff(inv, -eps_ * inv * inv);
  }

  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.re_ == b.re_ && a.eps_ == b.eps_;
  }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }
  // Arbitrary but stable order; used only to sort values deterministically.
  friend bool operator<(const Coeff& a, const Coeff& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.eps_ < b.eps_;
  }

 private:
  void canonicalize() {
    re_.canonicalize();
    eps_.canonicalize();
  }

  Rational re_;
  Rational eps_;
};

}  // namespace modcoh
