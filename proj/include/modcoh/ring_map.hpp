#pragma once

#include <utility>
#include <vector>

#include "modcoh/poly.hpp"

namespace modcoh {

/// Ring homomorphism determined by the image of each source variable.
/// Coefficients map identically (eps goes to eps), so source and target
/// must share the coefficient kind.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target, std::vector<Poly> images)
      : source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(images)) {
    if (images_.size() != source_->var_count())
      throw error("ring map needs one image per source variable");
    if (source_->kind() != target_->kind())
      throw error("ring map must preserve the coefficient kind");
    for (std::size_t j = 0; j < images_.size(); ++j) {
      require_same_ring(images_[j].ring(), target_);
      if (source_->is_invertible(j) && !images_[j].is_unit())
        throw error("invertible variable '" + source_->var_name(j) +
                    "' must map to a unit");
    }
  }

  static RingMap identity(const RingPtr& ring) {
    std::vector<Poly> images;
    for (std::size_t j = 0; j < ring->var_count(); ++j)
      images.push_back(Poly::variable(ring, j));
    return RingMap(ring, ring, std::move(images));
  }

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const Poly& image(std::size_t var) const { return images_[var]; }

  Poly apply(const Poly& p) const {
    require_same_ring(p.ring(), source_);
    Poly out = Poly::zero(target_);
    for (const auto& [e, c] : p.terms()) {
      Poly term = Poly::constant(target_, c);
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) term *= images_[j].pow(e[j]);
      out += term;
    }
    return out;
  }

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<Poly> images_;
};

}  // namespace modcoh
