#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modcoh/theorems.hpp"

namespace modcoh {

/// Knobs of one verification run. The seed only drives the randomized
/// membership sweep; every theorem checker is deterministic.
struct SuiteConfig {
  int box_half = 6;
  std::uint64_t seed = 2026;
  int jobs = 1;
  int dual_bound = kDualSearchBound;
  int property_samples = 1200;
};

struct SuiteEntry {
  TheoremVerdict verdict;
  VerdictStatus expected = VerdictStatus::Pass;

  bool as_expected() const { return verdict.status == expected; }
};

/// Aggregate outcome: per-theorem verdicts (ordered by id) plus the
/// randomized dual-route membership sweep.
struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteEntry> entries;
  std::uint64_t property_samples = 0;
  std::uint64_t property_failures = 0;
  bool ran_properties = false;

  bool ok() const {
    for (const auto& e : entries)
      if (!e.as_expected()) return false;
    return property_failures == 0;
  }
  int exit_code() const { return ok() ? 0 : 1; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["box_half"] = config.box_half;
    j["seed"] = config.seed;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      nlohmann::ordered_json item = e.verdict.to_json();
      item["expected"] = to_string(e.expected);
      item["as_expected"] = e.as_expected();
      list.push_back(std::move(item));
    }
    j["verdicts"] = std::move(list);
    if (ran_properties) {
      nlohmann::ordered_json p;
      p["samples"] = property_samples;
      p["failures"] = property_failures;
      j["membership_sweep"] = std::move(p);
    }
    j["ok"] = ok();
    return j;
  }

  std::string to_text() const {
    std::string out;
    for (const auto& e : entries) {
      out += e.verdict.to_text();
      if (!e.as_expected())
        out += "  << expected " + std::string(to_string(e.expected));
      out += "\n";
    }
    if (ran_properties)
      out += "[" + std::string(property_failures == 0 ? "pass" : "fail") +
             "] membership-sweep  " + std::to_string(property_samples) +
             " samples, " + std::to_string(property_failures) +
             " disagreements (seed " + std::to_string(config.seed) + ")\n";
    out += ok() ? "all verdicts as expected\n" : "UNEXPECTED VERDICTS\n";
    return out;
  }
};

inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "bupush", "buinv",      "cube",    "filtration", "flatbc",
      "gabber", "nonreduced", "projcoh", "snc"};
  return ids;
}

namespace detail {

inline TheoremVerdict merge_verdicts(const std::string& id,
                                     std::vector<TheoremVerdict> runs) {
  TheoremVerdict v = TheoremVerdict::pass(id);
  nlohmann::ordered_json subs = nlohmann::ordered_json::array();
  for (auto& r : runs) {
    v.millis += r.millis;
    if (r.status == VerdictStatus::Fail) {
      v.status = VerdictStatus::Fail;
      if (!v.witness) v.witness = r.witness;
    }
    subs.push_back(r.to_json());
  }
  v.details["runs"] = std::move(subs);
  return v;
}

// The fixed monomial family exercised by the cube checker: twelve pairs
// covering zero, one and two variables with multiplicities up to 3.
inline std::vector<std::pair<std::vector<std::string>, std::string>>
cube_family() {
  return {
      {{}, "1"},           {{"x"}, "x"},        {{"x"}, "x^2"},
      {{"x"}, "x^3"},      {{"x", "y"}, "1"},   {{"x", "y"}, "x*y"},
      {{"x", "y"}, "x^2*y"}, {{"x", "y"}, "x^3*y^2"}, {{"x", "y"}, "x*y^3"},
      {{"x", "y"}, "x^2*y^2"}, {{"x", "y"}, "x^2*y^3"}, {{"x", "y"}, "x^3*y^3"},
  };
}

struct BlowupCase {
  int n;
  int center_dim;
  std::vector<int> exponents;
};

inline std::vector<BlowupCase> blowup_family() {
  return {
      {2, 0, {1}},       {2, 0, {3}},       {2, 0, {2, 1}},
      {2, 0, {3, 3}},    {2, 1, {1}},       {2, 1, {2, 1}},
      {3, 0, {1, 1, 1}}, {3, 0, {3, 2, 1}}, {3, 1, {2, 1}},
      {3, 1, {1, 1, 1}}, {3, 1, {3, 2, 1}}, {3, 0, {3, 3, 3}},
  };
}

}  // namespace detail

/// Runs one named checker at the configured scale. Unknown ids raise
/// input_error.
inline SuiteEntry run_checker(const std::string& id, const SuiteConfig& cfg) {
  SuiteEntry entry;
  if (id == "projcoh") {
    const int d = std::min(cfg.box_half, 6);
    std::vector<TheoremVerdict> runs;
    for (int n = 1; n <= 3; ++n)
      runs.push_back(check_projective_cohomology(n, -d, d, cfg.jobs));
    entry.verdict = detail::merge_verdicts("projcoh", std::move(runs));
  } else if (id == "bupush") {
    const int half = std::min(cfg.box_half, 5);
    std::vector<TheoremVerdict> runs;
    for (int n : {1, 2})
      runs.push_back(check_blowup_pushforward(n, -n, 3, half, cfg.jobs));
    entry.verdict = detail::merge_verdicts("bupush", std::move(runs));
  } else if (id == "buinv") {
    const int half = std::min(cfg.box_half, 5);
    std::vector<TheoremVerdict> runs;
    for (const auto& c : detail::blowup_family())
      runs.push_back(check_basic_blowup_invariance(c.n, c.center_dim,
                                                   c.exponents, half, cfg.jobs));
    entry.verdict = detail::merge_verdicts("buinv", std::move(runs));
  } else if (id == "cube") {
    const int half = std::min(cfg.box_half, 6);
    std::vector<TheoremVerdict> runs;
    for (const auto& [vars, f] : detail::cube_family()) {
      auto ring = Ring::rationals(vars);
      runs.push_back(
          check_cube_invariance(AffineModulusPair::parse(ring, f), half));
    }
    entry.verdict = detail::merge_verdicts("cube", std::move(runs));
  } else if (id == "filtration") {
    entry.verdict = check_filtration_exhaustive(6, cfg.jobs);
  } else if (id == "nonreduced") {
    entry.verdict = counterexample_nonreduced(CoeffKind::DualNumbers,
                                              cfg.dual_bound,
                                              std::min(cfg.box_half, 4));
    entry.expected = VerdictStatus::StrictInclusionWitnessed;
  } else if (id == "flatbc") {
    entry.verdict = counterexample_flat_base_change(std::min(cfg.box_half, 6));
    entry.expected = VerdictStatus::StrictInclusionWitnessed;
  } else if (id == "gabber") {
    entry.verdict = counterexample_gabber_fermat(0, 3);
    entry.expected = VerdictStatus::StrictInclusionWitnessed;
  } else if (id == "snc") {
    // the three reference data: two in coordinate form, one not
    detail::Stopwatch timer;
    TheoremVerdict a = check_snc(3, {{"t1", 2}, {"t2", 1}}, {"t1", "t3"});
    TheoremVerdict b = check_snc(2, {}, {});
    TheoremVerdict c = check_snc(2, {{"t1", 1}}, {"t1 + t2^2"});
    TheoremVerdict v = TheoremVerdict::pass("snc");
    if (a.status != VerdictStatus::Pass)
      v.record_failure("coordinate datum rejected");
    if (a.details["divisor_meets_center"] !=
        nlohmann::ordered_json::array({"t1"}))
      v.record_failure("divisor/center intersection miscomputed");
    if (b.status != VerdictStatus::Pass)
      v.record_failure("empty modulus rejected");
    if (c.status != VerdictStatus::Fail)
      v.record_failure("non-coordinate center accepted");
    v.details["data"] = nlohmann::ordered_json::array(
        {a.to_json(), b.to_json(), c.to_json()});
    v.millis = timer.millis();
    entry.verdict = std::move(v);
  } else {
    throw input_error("unknown theorem id '" + id + "'");
  }
  return entry;
}

/// Randomized dual-route membership agreement sweep; the two routes are
/// compared inside mo_contains, which throws defect_error on mismatch.
inline std::pair<std::uint64_t, std::uint64_t> membership_sweep(
    std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  auto ring = Ring::rationals({"x", "y", "z"});
  std::uniform_int_distribution<int> mult(1, 4), exp(-6, 6), use(0, 2);
  std::uint64_t failures = 0;
  for (int i = 0; i < samples; ++i) {
    std::vector<std::pair<Poly, int>> factors;
    for (std::size_t var = 0; var < 3; ++var)
      if (use(rng) != 0) factors.emplace_back(Poly::variable(ring, var), mult(rng));
    AffineModulusPair pair(ring, FactoredDivisor(ring, 1, std::move(factors)));
    Exps e = {exp(rng), exp(rng), exp(rng)};
    try {
      mo_contains_monomial(pair, e);
    } catch (const defect_error&) {
      ++failures;
    }
  }
  return {std::uint64_t(samples), failures};
}

inline SuiteReport run_suite(std::vector<std::string> ids,
                             const SuiteConfig& cfg,
                             bool with_properties = true) {
  if (ids.empty()) ids = suite_ids();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  SuiteReport report;
  report.config = cfg;
  for (const auto& id : ids) report.entries.push_back(run_checker(id, cfg));
  if (with_properties) {
    report.ran_properties = true;
    auto [samples, failures] = membership_sweep(cfg.seed, cfg.property_samples);
    report.property_samples = samples;
    report.property_failures = failures;
  }
  return report;
}

}  // namespace modcoh
