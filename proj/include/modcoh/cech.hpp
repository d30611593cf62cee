#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modcoh/box.hpp"
#include "modcoh/lattice.hpp"
#include "modcoh/linalg.hpp"

namespace modcoh {

/// The alternating-restriction complex of one multidegree slice. Because
/// every sheaf here is monomial, the slice at multidegree d is the
/// cochain complex of the upward-closed family of chart subsets whose
/// intersection carries d, with the standard alternating signs and charts
/// taken in canonical name order.
struct CechSlice {
  Exps degree;
  // bases[q] lists the (q+1)-subsets (as bitmasks, ascending) carrying d
  std::vector<std::vector<std::uint32_t>> bases;
  std::vector<QMatrix> diffs;  // diffs[q] : C^q -> C^{q+1}
  std::vector<int> h;          // cohomology dimensions per q

  bool all_zero() const {
    for (int x : h)
      if (x) return false;
    return true;
  }
};

namespace detail {

// Sign of inserting chart m into the sorted subset `with` (position parity).
inline int insertion_sign(std::uint32_t with, std::uint32_t m_bit) {
  int pos = 0;
  for (std::uint32_t b = 1; b < m_bit; b <<= 1)
    if (with & b) ++pos;
  return pos % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// Per-chart-subset lattices, computed once per bundle and reused for
/// every multidegree.
inline std::vector<SectionLattice> subset_lattices(const LineBundleDatum& b) {
  const std::size_t m = b.space.chart_count();
  if (m > 16) throw error("covers with more than 16 charts are not supported");
  std::vector<SectionLattice> out(std::size_t(1) << m);
  for (std::uint32_t s = 1; s < out.size(); ++s) out[s] = b.on_subset(s);
  return out;
}

inline CechSlice cech_slice(const std::vector<SectionLattice>& lattices,
                            std::size_t chart_count, const Exps& degree) {
  CechSlice slice;
  slice.degree = degree;
  std::vector<char> carries(lattices.size(), 0);
  bool any = false;
  for (std::uint32_t s = 1; s < lattices.size(); ++s) {
    carries[s] = lattices[s].contains(degree);
    any |= carries[s];
  }
  slice.bases.resize(chart_count);
  slice.h.assign(chart_count, 0);
  slice.diffs.resize(chart_count);
  if (!any) return slice;

  for (std::uint32_t s = 1; s < lattices.size(); ++s)
    if (carries[s])
      slice.bases[std::popcount(s) - 1].push_back(s);

  std::vector<std::size_t> ranks(chart_count, 0);
  for (std::size_t q = 0; q + 1 < chart_count; ++q) {
    const auto& dom = slice.bases[q];
    const auto& cod = slice.bases[q + 1];
    if (dom.empty() || cod.empty()) continue;
    QMatrix d(cod.size(), std::vector<Rational>(dom.size(), Rational(0)));
    for (std::size_t col = 0; col < dom.size(); ++col) {
      const std::uint32_t s = dom[col];
      for (std::size_t k = 0; k < chart_count; ++k) {
        const std::uint32_t bit = 1u << k;
        if (s & bit) continue;
        const std::uint32_t t = s | bit;
        auto it = std::lower_bound(cod.begin(), cod.end(), t);
        if (it == cod.end() || *it != t) continue;
        d[it - cod.begin()][col] = detail::insertion_sign(s, bit);
      }
    }
    ranks[q] = matrix_rank(d);
    slice.diffs[q] = std::move(d);
  }
  for (std::size_t q = 0; q < chart_count; ++q) {
    const int dim = int(slice.bases[q].size()) - int(ranks[q]) -
                    int(q > 0 ? ranks[q - 1] : 0);
    slice.h[q] = dim;
  }
  return slice;
}

/// Exact cohomology dimensions with monomial bases, per degree q and per
/// multidegree of the truncation box. Deterministic and independent of
/// the slice evaluation schedule.
struct CohomologyReport {
  Box box;
  std::vector<std::string> vars;
  std::vector<std::string> chart_names;
  // classes[q] = sorted list of (multidegree, dimension), dims > 0 only
  std::vector<std::vector<std::pair<Exps, int>>> classes;
  std::vector<std::uint64_t> totals;

  int max_q() const { return int(classes.size()) - 1; }
  std::uint64_t total(std::size_t q) const {
    return q < totals.size() ? totals[q] : 0;
  }

  std::string monomial_name(const Exps& e) const {
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars[j];
      if (e[j] != 1) s += "^" + std::to_string(e[j]);
    }
    return s.empty() ? "1" : s;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["variables"] = vars;
    j["charts"] = chart_names;
    j["box"] = box.to_json();
    nlohmann::ordered_json per_q = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < classes.size(); ++q) {
      nlohmann::ordered_json entry;
      entry["q"] = q;
      entry["dim"] = totals[q];
      nlohmann::ordered_json basis = nlohmann::ordered_json::array();
      for (const auto& [e, dim] : classes[q]) {
        nlohmann::ordered_json cls;
        cls["monomial"] = monomial_name(e);
        cls["multidegree"] = e;
        cls["dim"] = dim;
        basis.push_back(std::move(cls));
      }
      entry["classes"] = std::move(basis);
      per_q.push_back(std::move(entry));
    }
    j["cohomology"] = std::move(per_q);
    return j;
  }

  std::string to_text() const {
    std::string out;
    for (std::size_t q = 0; q < classes.size(); ++q) {
      out += "H^" + std::to_string(q) + ": dim " + std::to_string(totals[q]);
      if (!classes[q].empty() && totals[q] <= 40) {
        out += "  basis:";
        for (const auto& [e, dim] : classes[q]) {
          out += " " + monomial_name(e);
          if (dim > 1) out += "(x" + std::to_string(dim) + ")";
        }
      }
      out += "\n";
    }
    return out;
  }
};

/// Runs every multidegree slice of the box through the complex. Slices
/// are independent; `jobs` > 1 splits the box into contiguous index
/// chunks and merges results in chunk order, so output does not depend
/// on the schedule.
inline CohomologyReport cech_cohomology(const LineBundleDatum& bundle,
                                        const Box& box, int jobs = 1) {
  if (box.var_count() != bundle.space.vars.size())
    throw error("box and cover disagree on the number of variables");
  const auto lattices = subset_lattices(bundle);
  const std::size_t m = bundle.space.chart_count();

  CohomologyReport report;
  report.box = box;
  report.vars = bundle.space.vars;
  report.chart_names = bundle.space.chart_names;
  report.classes.assign(m, {});
  report.totals.assign(m, 0);

  using Found = std::vector<std::pair<Exps, int>>;
  const std::uint64_t n = box.size();
  const int workers = std::max(1, jobs);
  std::vector<std::vector<Found>> partials(workers,
                                           std::vector<Found>(m));

  auto run_range = [&](int w, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      const Exps d = box.at(i);
      CechSlice slice = cech_slice(lattices, m, d);
      for (std::size_t q = 0; q < m; ++q)
        if (slice.h[q] != 0) partials[w][q].emplace_back(d, slice.h[q]);
    }
  };

  if (workers == 1) {
    run_range(0, 0, n);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back(run_range, w, std::min<std::uint64_t>(w * chunk, n),
                           std::min<std::uint64_t>((w + 1) * chunk, n));
    for (auto& t : threads) t.join();
  }

  for (int w = 0; w < workers; ++w)
    for (std::size_t q = 0; q < m; ++q)
      for (auto& entry : partials[w][q]) {
        report.totals[q] += entry.second;
        report.classes[q].push_back(std::move(entry));
      }
  return report;
}

}  // namespace modcoh
