#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modcoh/suite.hpp"

namespace modcoh {

namespace detail {

// "6" means [-6, 6]; "-4..4" means exactly that range.
inline std::pair<int, int> parse_box_spec(const std::string& spec) {
  try {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
      const int half = std::stoi(spec);
      if (half < 0) throw input_error("box half-width must be >= 0");
      return {-half, half};
    }
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    if (lo > hi) throw input_error("empty box range '" + spec + "'");
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw input_error("malformed box '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw input_error("box bound out of range in '" + spec + "'");
  }
}

inline int env_default_box() {
  if (const char* v = std::getenv("MODCOH_BOX")) {
    try {
      const int half = std::stoi(v);
      if (half >= 0) return half;
    } catch (...) {
    }
  }
  return 6;
}

inline std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct MoOptions {
  std::string ring_csv, invertible_csv, coeff = "rationals", modulus = "1";
  std::string pair_file;
  std::vector<std::string> tests;
  std::string format = "text";
};

inline int run_mo(const MoOptions& opt, std::ostream& out) {
  AffineModulusPair pair = [&] {
    if (!opt.pair_file.empty()) {
      std::ifstream in(opt.pair_file);
      if (!in) throw input_error("cannot open pair file '" + opt.pair_file + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw input_error("malformed pair file: " + std::string(e.what()));
      }
      return pair_from_json(j);
    }
    CoeffKind kind;
    if (opt.coeff == "rationals")
      kind = CoeffKind::Rationals;
    else if (opt.coeff == "dual-numbers" || opt.coeff == "dual")
      kind = CoeffKind::DualNumbers;
    else
      throw input_error("unknown coefficient ring '" + opt.coeff + "'");
    auto ring = std::make_shared<const Ring>(kind, split_names(opt.ring_csv),
                                             split_names(opt.invertible_csv));
    return AffineModulusPair::parse(ring, opt.modulus);
  }();

  nlohmann::ordered_json j;
  j["pair"] = pair_to_json(pair);
  j["modulus"] = pair.modulus().to_string();
  j["radical"] = pair.modulus().radical().to_string();
  std::string generator_text;
  if (pair.ring()->kind() == CoeffKind::Rationals) {
    MOModule m = mo_generator(pair);
    generator_text = pair.to_string(m.generator);
    j["generator"] = generator_text;
  } else {
    j["generator"] = nullptr;
  }
  nlohmann::ordered_json tests = nlohmann::ordered_json::array();
  for (const auto& text : opt.tests) {
    nlohmann::ordered_json row;
    row["element"] = text;
    auto elt = pair.from_frac(parse_frac(pair.ring(), text));
    if (!elt) {
      row["member"] = false;
      row["note"] = "not an element of A[1/f]";
    } else {
      row["parsed"] = pair.to_string(*elt);
      row["member"] = mo_contains(pair, *elt);
    }
    tests.push_back(std::move(row));
  }
  j["tests"] = std::move(tests);

  if (opt.format == "json") {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "modulus:   " << j["modulus"].get<std::string>() << "\n";
  out << "radical:   " << j["radical"].get<std::string>() << "\n";
  if (!generator_text.empty())
    out << "generator: " << generator_text << "\n";
  else
    out << "generator: (dual numbers: no closed form; use --test)\n";
  for (const auto& row : j["tests"]) {
    out << "test " << row["element"].get<std::string>() << ": ";
    if (row.contains("note"))
      out << "not a member (" << row["note"].get<std::string>() << ")\n";
    else
      out << (row["member"].get<bool>() ? "member" : "not a member") << "\n";
  }
  return 0;
}

struct CechOptions {
  std::string space;  // pn | blowup | product
  std::string base = "point";
  int n = 1;
  int twist = 0;
  std::string box_spec;
  int jobs = 1;
  std::string format = "text";
};

inline int run_cech(const CechOptions& opt, std::ostream& out) {
  LineBundleDatum bundle = [&]() -> LineBundleDatum {
    auto base_bundle = [&](const std::string& kind) -> LineBundleDatum {
      if (kind == "pn") return projective_bundle(opt.n, opt.twist);
      if (kind == "blowup") return blowup_bundle(opt.n, opt.twist);
      if (kind == "point") {
        CoveredSpace pc = point_cover();
        return LineBundleDatum{pc, pc.chart_rings};
      }
      throw input_error("unknown space '" + kind + "'");
    };
    if (opt.space == "product") return product_with_line(base_bundle(opt.base));
    return base_bundle(opt.space);
  }();

  Box box = [&] {
    if (!opt.box_spec.empty()) {
      auto [lo, hi] = parse_box_spec(opt.box_spec);
      return Box::span(bundle.space.vars.size(), lo, hi);
    }
    if (opt.space == "pn") return projective_box(opt.n, opt.twist);
    return Box::cube(bundle.space.vars.size(), env_default_box());
  }();

  CohomologyReport r = cech_cohomology(bundle, box, opt.jobs);
  if (opt.format == "json") {
    out << r.to_json().dump(2) << "\n";
  } else {
    out << "space: " << opt.space;
    if (opt.space == "product") out << " (base " << opt.base << ")";
    out << "  twist " << opt.twist << "  charts " << bundle.space.chart_count()
        << "\n";
    out << r.to_text();
  }
  return 0;
}

struct VerifyOptions {
  std::vector<std::string> ids;
  bool all = false;
  int box_half = -1;
  std::uint64_t seed = 2026;
  int jobs = 1;
  int dual_bound = kDualSearchBound;
  int samples = 1200;
  std::string format = "text";
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out) {
  SuiteConfig cfg;
  cfg.box_half = opt.box_half >= 0 ? opt.box_half : env_default_box();
  cfg.seed = opt.seed;
  cfg.jobs = opt.jobs;
  cfg.dual_bound = opt.dual_bound;
  cfg.property_samples = opt.samples;

  std::vector<std::string> ids = opt.ids;
  if (opt.all) ids.clear();
  for (const auto& id : ids)
    if (std::find(suite_ids().begin(), suite_ids().end(), id) ==
        suite_ids().end())
      throw input_error("unknown theorem id '" + id + "'");

  // the randomized sweep accompanies full runs only
  const bool with_properties = ids.empty();
  SuiteReport report = run_suite(ids, cfg, with_properties);
  if (opt.format == "json")
    out << report.to_json().dump(2) << "\n";
  else
    out << report.to_text();
  return report.exit_code();
}

}  // namespace detail

/// Drives the command line. Returns the process exit code: 0 success,
/// 1 unexpected verdict or internal defect, 2 bad input.
inline int cli_run(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact sections and Cech cohomology of affine modulus data"};
  app.require_subcommand(1);

  detail::MoOptions mo_opt;
  auto* mo = app.add_subcommand(
      "mo", "sections at a modulus: generator and membership tests");
  mo->add_option("--ring", mo_opt.ring_csv, "comma-separated variables");
  mo->add_option("--invertible", mo_opt.invertible_csv,
                 "variables invertible in the ring");
  mo->add_option("--coeff", mo_opt.coeff, "rationals | dual-numbers");
  mo->add_option("--f", mo_opt.modulus, "modulus in declared-factored form");
  mo->add_option("--pair", mo_opt.pair_file, "pair specification file (JSON)");
  mo->add_option("--test", mo_opt.tests, "element of A[1/f] to test");
  mo->add_option("--format", mo_opt.format, "text | json");

  detail::CechOptions cech_opt;
  auto* cech = app.add_subcommand("cech", "cohomology of a monomial bundle");
  cech->add_option("space", cech_opt.space, "pn | blowup | product")
      ->required();
  cech->add_option("--base", cech_opt.base,
                   "base of a product: pn | blowup | point");
  cech->add_option("--n", cech_opt.n, "dimension parameter");
  cech->add_option("--twist", cech_opt.twist, "bundle twist");
  cech->add_option("--box", cech_opt.box_spec, "box: HALF or LO..HI");
  cech->add_option("--jobs", cech_opt.jobs, "worker threads");
  cech->add_option("--format", cech_opt.format, "text | json");

  detail::VerifyOptions verify_opt;
  auto* verify =
      app.add_subcommand("verify", "run the verification suite (exit 1 on "
                                   "any unexpected verdict)");
  verify->add_option("ids", verify_opt.ids, "subset of theorem ids");
  verify->add_flag("--all", verify_opt.all, "run every checker");
  verify->add_option("--box", verify_opt.box_half,
                     "truncation half-width (env MODCOH_BOX, default 6)");
  verify->add_option("--seed", verify_opt.seed, "seed for the random sweep");
  verify->add_option("--jobs", verify_opt.jobs, "worker threads");
  verify->add_option("--dual-bound", verify_opt.dual_bound,
                     "criterion search depth over dual numbers");
  verify->add_option("--samples", verify_opt.samples,
                     "random membership samples");
  verify->add_option("--format", verify_opt.format, "text | json");

  detail::VerifyOptions counter_opt;
  auto* counter = app.add_subcommand(
      "counterexamples", "run just the counterexample checkers");
  counter->add_option("--box", counter_opt.box_half, "truncation half-width");
  counter->add_option("--format", counter_opt.format, "text | json");
  counter->add_option("--dual-bound", counter_opt.dual_bound,
                      "criterion search depth over dual numbers");

  args.insert(args.begin(), "modcoh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    if (mo->parsed()) return detail::run_mo(mo_opt, out);
    if (cech->parsed()) return detail::run_cech(cech_opt, out);
    if (verify->parsed()) return detail::run_verify(verify_opt, out);
    if (counter->parsed()) {
      counter_opt.ids = {"flatbc", "gabber", "nonreduced"};
      return detail::run_verify(counter_opt, out);
    }
    return 2;
  } catch (const input_error& e) {
    err << "input error";
    if (e.column > 0) err << " at column " << e.column;
    err << ": " << e.what() << "\n";
    return 2;
  } catch (const defect_error& e) {
    err << "internal defect: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(std::move(args), std::cout, std::cerr);
}

}  // namespace modcoh
