#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modcoh/errors.hpp"
#include "modcoh/poly.hpp"

namespace modcoh {

/// Finite product of per-variable exponent intervals. All comparisons of
/// infinite graded objects in this library are relative to such a box,
/// and the box is recorded in every verdict that used one.
struct Box {
  std::vector<std::pair<int, int>> ranges;  // inclusive [lo, hi] per variable

  static Box cube(std::size_t nvars, int half) {
    if (half < 0) throw error("box half-width must be >= 0");
    Box b;
    b.ranges.assign(nvars, {-half, half});
    return b;
  }
  static Box span(std::size_t nvars, int lo, int hi) {
    if (lo > hi) throw error("empty box range");
    Box b;
    b.ranges.assign(nvars, {lo, hi});
    return b;
  }

  std::size_t var_count() const { return ranges.size(); }

  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (const auto& [lo, hi] : ranges) n *= static_cast<std::uint64_t>(hi - lo + 1);
    return n;
  }

  /// Mixed-radix decoding; index 0 is the all-lo corner and the last
  /// variable varies fastest. Gives every slice a stable address.
  Exps at(std::uint64_t index) const {
    Exps e(ranges.size());
    for (std::size_t j = ranges.size(); j-- > 0;) {
      const auto [lo, hi] = ranges[j];
      const std::uint64_t width = static_cast<std::uint64_t>(hi - lo + 1);
      e[j] = lo + static_cast<int>(index % width);
      index /= width;
    }
    return e;
  }

  bool contains(const Exps& e) const {
    if (e.size() != ranges.size()) return false;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] < ranges[j].first || e[j] > ranges[j].second) return false;
    return true;
  }

  Box restricted_to_nonnegative(std::size_t var) const {
    Box b = *this;
    b.ranges[var].first = std::max(b.ranges[var].first, 0);
    return b;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : ranges) j.push_back({lo, hi});
    return j;
  }
};

}  // namespace modcoh
