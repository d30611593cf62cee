#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modcoh/box.hpp"
#include "modcoh/errors.hpp"
#include "modcoh/poly.hpp"

namespace modcoh {

/// Affine inequality sum(coeffs . r) >= bound over exponent vectors, with
/// coefficients in {-1, 0, +1}. `dropped_by` is the set of charts (as a
/// bitmask) whose presence in an intersection inverts the variable the
/// constraint protects, removing it there; 0 means the constraint holds
/// on every intersection.
struct Constraint {
  std::vector<int> coeffs;
  int bound = 0;
  std::uint32_t dropped_by = 0;

  bool satisfied(const Exps& r) const {
    long s = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += long(coeffs[j]) * r[j];
    return s >= bound;
  }

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.bound == b.bound && a.coeffs == b.coeffs &&
           a.dropped_by == b.dropped_by;
  }
};

inline Constraint var_at_least(std::size_t nvars, std::size_t var, int bound,
                               std::uint32_t dropped_by) {
  Constraint c;
  c.coeffs.assign(nvars, 0);
  c.coeffs[var] = 1;
  c.bound = bound;
  c.dropped_by = dropped_by;
  return c;
}

inline Constraint sum_at_least(std::size_t nvars,
                               const std::vector<std::size_t>& support,
                               int bound, std::uint32_t dropped_by = 0) {
  Constraint c;
  c.coeffs.assign(nvars, 0);
  for (std::size_t j : support) c.coeffs[j] = 1;
  c.bound = bound;
  c.dropped_by = dropped_by;
  return c;
}

/// Monomial-exponent description of the sections of a sheaf on one chart
/// (or one intersection of charts): the set of exponent vectors meeting
/// every constraint.
struct SectionLattice {
  std::size_t nvars = 0;
  std::vector<Constraint> constraints;

  bool contains(const Exps& r) const {
    for (const auto& c : constraints)
      if (!c.satisfied(r)) return false;
    return true;
  }

  void add(Constraint c) {
    if (std::find(constraints.begin(), constraints.end(), c) ==
        constraints.end())
      constraints.push_back(std::move(c));
  }
};

/// Chart cover of a space whose sheaves are monomial: chart names plus
/// the coordinate-ring lattice of each chart. Intersections are formed by
/// pooling constraints and discarding the ones their `dropped_by` mask
/// marks as inverted.
struct CoveredSpace {
  std::vector<std::string> vars;
  std::vector<std::string> chart_names;
  std::vector<SectionLattice> chart_rings;

  std::size_t chart_count() const { return chart_names.size(); }
};

/// A line-bundle datum: one section lattice per chart, compatible on
/// intersections by inclusion.
struct LineBundleDatum {
  CoveredSpace space;
  std::vector<SectionLattice> sections;

  /// Sections on the intersection of the charts in `subset` (bitmask).
  SectionLattice on_subset(std::uint32_t subset) const {
    SectionLattice out;
    out.nvars = space.vars.size();
    for (std::size_t k = 0; k < sections.size(); ++k) {
      if (!(subset & (1u << k))) continue;
      for (const auto& c : sections[k].constraints)
        if ((c.dropped_by & subset) == 0) out.add(c);
    }
    return out;
  }
};

// ---- constructors --------------------------------------------------------

namespace detail {

inline std::vector<std::string> indexed_vars(const std::string& stem, int lo,
                                             int hi) {
  std::vector<std::string> vars;
  for (int i = lo; i <= hi; ++i) vars.push_back(stem + std::to_string(i));
  return vars;
}

}  // namespace detail

/// Standard (n+1)-chart cover of P^n; monomials are written in the
/// homogeneous coordinates t0..tn and chart ring lattices sit in total
/// degree zero.
inline CoveredSpace projective_cover(int n) {
  if (n < 1) throw error("projective_cover needs n >= 1");
  const std::size_t nv = std::size_t(n) + 1;
  CoveredSpace cs;
  cs.vars = detail::indexed_vars("t", 0, n);
  std::vector<std::size_t> all(nv);
  for (std::size_t j = 0; j < nv; ++j) all[j] = j;
  for (std::size_t k = 0; k < nv; ++k) {
    cs.chart_names.push_back("U" + std::to_string(k));
    SectionLattice L;
    L.nvars = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (j != k) L.add(var_at_least(nv, j, 0, 1u << j));
    Constraint deg = sum_at_least(nv, all, 0);
    L.add(deg);
    Constraint negdeg = deg;
    for (auto& c : negdeg.coeffs) c = -c;
    negdeg.bound = 0;
    L.add(negdeg);
    cs.chart_rings.push_back(std::move(L));
  }
  return cs;
}

/// O(d) on P^n: degree-d slice of the homogeneous coordinate monomials.
inline LineBundleDatum projective_bundle(int n, int d) {
  CoveredSpace cs = projective_cover(n);
  const std::size_t nv = cs.vars.size();
  std::vector<std::size_t> all(nv);
  for (std::size_t j = 0; j < nv; ++j) all[j] = j;
  LineBundleDatum bundle{cs, {}};
  for (std::size_t k = 0; k < nv; ++k) {
    SectionLattice L;
    L.nvars = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (j != k) L.add(var_at_least(nv, j, 0, 1u << j));
    Constraint deg = sum_at_least(nv, all, d);
    L.add(deg);
    Constraint negdeg = deg;
    for (auto& c : negdeg.coeffs) c = -c;
    negdeg.bound = -d;
    L.add(negdeg);
    bundle.sections.push_back(std::move(L));
  }
  return bundle;
}

/// Cover of the blowup of affine space along the coordinate subspace
/// {t_b = 0 : b in center}; one chart per center variable. Variables not
/// in the center are untouched (their sign constraints never drop).
inline CoveredSpace blowup_cover_center(std::vector<std::string> vars,
                                        std::vector<std::size_t> center) {
  if (center.empty()) throw error("blowup needs a nonempty center");
  const std::size_t nv = vars.size();
  CoveredSpace cs;
  cs.vars = std::move(vars);
  std::vector<std::uint32_t> chart_of_var(nv, 0);
  for (std::size_t c = 0; c < center.size(); ++c)
    chart_of_var[center[c]] = 1u << c;
  for (std::size_t c = 0; c < center.size(); ++c) {
    const std::size_t k = center[c];
    cs.chart_names.push_back("U" + cs.vars[k]);
    SectionLattice L;
    L.nvars = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (j != k) L.add(var_at_least(nv, j, 0, chart_of_var[j]));
    L.add(sum_at_least(nv, center, 0));
    cs.chart_rings.push_back(std::move(L));
  }
  return cs;
}

/// Cover of the blowup of A^{n+1} at the origin, charts
/// k[t0/tk, ..., tk, ..., tn/tk].
inline CoveredSpace blowup_cover(int n) {
  if (n < 1) throw error("blowup_cover needs n >= 1");
  std::vector<std::size_t> all(std::size_t(n) + 1);
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return blowup_cover_center(detail::indexed_vars("t", 0, n), all);
}

/// O(i) on a coordinate blowup, in the convention where the pushforward
/// of O(i) for i >= 0 is the i-th power of the center's ideal: sections
/// on chart k are the chart monomials with sum over the center >= i.
/// `floors` optionally relaxes the per-variable sign constraints (used
/// for the sheaf of sections with poles along a monomial divisor).
inline LineBundleDatum blowup_bundle_center(
    std::vector<std::string> vars, std::vector<std::size_t> center, int twist,
    const std::vector<int>& floors = {}) {
  CoveredSpace cs = blowup_cover_center(std::move(vars), center);
  const std::size_t nv = cs.vars.size();
  std::vector<std::uint32_t> chart_of_var(nv, 0);
  for (std::size_t c = 0; c < center.size(); ++c)
    chart_of_var[center[c]] = 1u << c;

  LineBundleDatum bundle{cs, {}};
  for (std::size_t c = 0; c < center.size(); ++c) {
    const std::size_t k = center[c];
    SectionLattice L;
    L.nvars = nv;
    for (std::size_t j = 0; j < nv; ++j) {
      if (j == k) continue;
      const int floor = floors.empty() ? 0 : floors[j];
      L.add(var_at_least(nv, j, floor, chart_of_var[j]));
    }
    L.add(sum_at_least(nv, center, twist));
    bundle.sections.push_back(std::move(L));
  }
  return bundle;
}

inline LineBundleDatum blowup_bundle(int n, int twist) {
  std::vector<std::size_t> all(std::size_t(n) + 1);
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return blowup_bundle_center(detail::indexed_vars("t", 0, n), all, twist);
}

/// Product with the standard two-chart P^1. Appends one Laurent direction
/// (named with `stem`); chart A x U0 adds e >= 0, chart A x U1 adds
/// e <= 0, and either constraint drops once the other side joins the
/// intersection.
inline CoveredSpace product_with_line(const CoveredSpace& base,
                                      const std::string& stem = "t") {
  CoveredSpace cs;
  cs.vars = base.vars;
  std::string tname = stem;
  while (std::find(cs.vars.begin(), cs.vars.end(), tname) != cs.vars.end())
    tname += "_";
  cs.vars.push_back(tname);
  const std::size_t nv = cs.vars.size();
  const std::size_t tvar = nv - 1;
  const std::size_t m = std::max<std::size_t>(base.chart_count(), 1);

  // chart (a, i) gets index 2a + i
  auto remap_mask = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) out |= (1u << (2 * b)) | (1u << (2 * b + 1));
    return out;
  };
  std::uint32_t u0_side = 0, u1_side = 0;
  for (std::size_t b = 0; b < m; ++b) {
    u0_side |= 1u << (2 * b);
    u1_side |= 1u << (2 * b + 1);
  }

  const bool point = base.chart_count() == 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (int i = 0; i <= 1; ++i) {
      std::string name = point ? "" : base.chart_names[a] + ".";
      cs.chart_names.push_back(name + "U" + std::to_string(i));
      SectionLattice L;
      L.nvars = nv;
      if (!point)
        for (const auto& c : base.chart_rings[a].constraints) {
          Constraint cc;
          cc.coeffs = c.coeffs;
          cc.coeffs.push_back(0);
          cc.bound = c.bound;
          cc.dropped_by = remap_mask(c.dropped_by);
          L.add(std::move(cc));
        }
      Constraint tc;
      tc.coeffs.assign(nv, 0);
      tc.coeffs[tvar] = i == 0 ? 1 : -1;
      tc.bound = 0;
      tc.dropped_by = i == 0 ? u1_side : u0_side;
      L.add(std::move(tc));
      cs.chart_rings.push_back(std::move(L));
    }
  }
  return cs;
}

/// Sections of a bundle pulled back along X x P^1 -> X (trivial along the
/// line factor).
inline LineBundleDatum product_with_line(const LineBundleDatum& base,
                                         const std::string& stem = "t") {
  CoveredSpace cs = product_with_line(base.space, stem);
  const std::size_t nv = cs.vars.size();
  const std::size_t m = std::max<std::size_t>(base.space.chart_count(), 1);
  auto remap_mask = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) out |= (1u << (2 * b)) | (1u << (2 * b + 1));
    return out;
  };
  LineBundleDatum bundle{cs, {}};
  const bool point = base.space.chart_count() == 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (int i = 0; i <= 1; ++i) {
      SectionLattice L;
      L.nvars = nv;
      if (!point)
        for (const auto& c : base.sections[a].constraints) {
          Constraint cc;
          cc.coeffs = c.coeffs;
          cc.coeffs.push_back(0);
          cc.bound = c.bound;
          cc.dropped_by = remap_mask(c.dropped_by);
          L.add(std::move(cc));
        }
      // reuse the t-side constraint already present in the cover
      L.add(cs.chart_rings[2 * a + i].constraints.back());
      bundle.sections.push_back(std::move(L));
    }
  }
  return bundle;
}

/// Point "cover": one chart, no variables, no constraints.
inline CoveredSpace point_cover() {
  CoveredSpace cs;
  cs.chart_names.push_back("pt");
  SectionLattice L;
  L.nvars = 0;
  cs.chart_rings.push_back(L);
  return cs;
}

}  // namespace modcoh
