#include <catch2/catch_amalgamated.hpp>

#include "modcoh/suite.hpp"

using namespace modcoh;

TEST_CASE("projective tables match the closed forms") {
  TheoremVerdict v = check_projective_cohomology(2, -4, 4);
  CHECK(v.status == VerdictStatus::Pass);

  // O on P^1: one global section, nothing else
  TheoremVerdict unit = check_projective_cohomology(1, 0, 0);
  CHECK(unit.status == VerdictStatus::Pass);
  CHECK(unit.details["table"][0]["dims"] ==
        nlohmann::ordered_json::array({1, 0}));

  // H^3(P^3, O(-5)) counts the four deep monomials
  TheoremVerdict deep = check_projective_cohomology(3, -5, -5);
  CHECK(deep.status == VerdictStatus::Pass);
  CHECK(deep.details["table"][0]["dims"][3] == 4);
}

TEST_CASE("blowup pushforward with a sharp lower twist") {
  TheoremVerdict v = check_blowup_pushforward(1, -1, 3, 4);
  CHECK(v.status == VerdictStatus::Pass);
  CHECK(v.details["sharp_twist"] == -2);
  CHECK(v.details["sharp_class"] == "1/(t0*t1)");

  TheoremVerdict w = check_blowup_pushforward(2, -2, 3, 4);
  CHECK(w.status == VerdictStatus::Pass);
  CHECK(w.details["sharp_class"] == "1/(t0*t1*t2)");

  CHECK_THROWS_AS(check_blowup_pushforward(1, -2, 3, 4), not_admissible_error);
}

TEST_CASE("blowup invariance on the coordinate model") {
  // origin, reduced divisor t1: twist 0
  TheoremVerdict a = check_basic_blowup_invariance(2, 0, {1}, 4);
  CHECK(a.status == VerdictStatus::Pass);
  CHECK(a.details["exceptional_twist"] == 0);

  // origin, t1^2 t2: two components through the center, twist -1
  TheoremVerdict b = check_basic_blowup_invariance(2, 0, {2, 1}, 4);
  CHECK(b.status == VerdictStatus::Pass);
  CHECK(b.details["exceptional_twist"] == -1);

  // coordinate-line center in A^3 with divisor t1 t2
  TheoremVerdict c = check_basic_blowup_invariance(3, 1, {1, 1}, 3);
  CHECK(c.status == VerdictStatus::Pass);
  CHECK(c.details["components_through_center"] == 2);

  CHECK_THROWS_AS(check_basic_blowup_invariance(2, 0, {}, 3),
                  not_admissible_error);
  CHECK_THROWS_AS(check_basic_blowup_invariance(2, 2, {1}, 3),
                  not_admissible_error);
}

TEST_CASE("blowup invariance twist bookkeeping") {
  // t1^2 t2 through the origin of A^2: two components, twist 1 - 2
  TheoremVerdict b = check_basic_blowup_invariance(2, 0, {2, 1}, 3);
  CHECK(b.details["exceptional_twist"] == -1);
  // only t1, t2 pass through a line center {t1=t2=0} in A^3
  TheoremVerdict c = check_basic_blowup_invariance(3, 1, {3, 2, 1}, 3);
  CHECK(c.status == VerdictStatus::Pass);
  CHECK(c.details["components_through_center"] == 2);
  CHECK(c.details["exceptional_twist"] == -1);
}

TEST_CASE("cube invariance of the section sequence") {
  auto Rx = Ring::rationals({"x"});
  CHECK(check_cube_invariance(AffineModulusPair::parse(Rx, "x^2"), 6).status ==
        VerdictStatus::Pass);

  auto Q = Ring::rationals({});
  TheoremVerdict classical =
      check_cube_invariance(AffineModulusPair::parse(Q, "1"), 6);
  CHECK(classical.status == VerdictStatus::Pass);
  CHECK(classical.details["h0_sections_match"] == true);
  CHECK(classical.details["h1_obstruction_vanishes"] == true);

  auto Rxy = Ring::rationals({"x", "y"});
  CHECK(check_cube_invariance(AffineModulusPair::parse(Rxy, "x^3*y"), 5)
            .status == VerdictStatus::Pass);

  auto D = Ring::dual_numbers({});
  CHECK_THROWS_AS(
      check_cube_invariance(AffineModulusPair::parse(D, "1"), 3),
      unsupported_ring_error);
}

TEST_CASE("filtration levels exhaust the affine line") {
  TheoremVerdict v = check_filtration_exhaustive(6);
  CHECK(v.status == VerdictStatus::Pass);
  CHECK(v.details["dims"] == nlohmann::ordered_json::array({1, 2, 3, 4, 5, 6}));
  CHECK(v.details["t_powers"] ==
        nlohmann::ordered_json::array({0, 1, 2, 3, 4, 5}));

  TheoremVerdict one = check_filtration_exhaustive(1);
  CHECK(one.status == VerdictStatus::Pass);
  CHECK(one.details["dims"][0] == 1);
}

TEST_CASE("non-reduced coefficients break middle exactness") {
  TheoremVerdict v = counterexample_nonreduced();
  CHECK(v.status == VerdictStatus::StrictInclusionWitnessed);
  REQUIRE(v.witness);
  CHECK(*v.witness == "eps*t");
  CHECK(v.details["right_exact"] == true);

  // the same datum over the rationals satisfies the sequence
  TheoremVerdict reduced = counterexample_nonreduced(CoeffKind::Rationals);
  CHECK(reduced.status == VerdictStatus::Pass);

  // witness is stable under a deeper criterion search
  TheoremVerdict deeper = counterexample_nonreduced(CoeffKind::DualNumbers, 8);
  CHECK(deeper.witness == v.witness);
}

TEST_CASE("flat base change strictly shrinks the module") {
  TheoremVerdict v = counterexample_flat_base_change();
  CHECK(v.status == VerdictStatus::StrictInclusionWitnessed);
  REQUIRE(v.witness);
  CHECK(*v.witness == "1/t^3");

  const auto& rows = v.details["instances"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["generator_image"] == "1/t^2");
  CHECK(rows[0]["target_generator"] == "1/t^3");
  CHECK(rows[1]["strict"] == false);  // the etale (identity) instance
  CHECK(rows[2]["generator_image"] == "1/t^3");
  CHECK(rows[2]["target_generator"] == "1/t^5");
  CHECK(rows[2]["first_missing"] == "1/t^5");

  // 1/t^4 is in the target module but outside the extended-scalars image
  auto B = Ring::rationals({"t"});
  auto dst = AffineModulusPair::parse(B, "t^6");
  auto elt = dst.from_laurent_exps({-4});
  REQUIRE(elt);
  CHECK(mo_contains(dst, *elt));
  CHECK(!exact_divide(parse_poly(B, "t^2"), parse_poly(B, "t^3")).has_value());
}

TEST_CASE("cone over a cubic: curve cohomology by exact kernels") {
  TheoremVerdict v = counterexample_gabber_fermat(0, 3);
  CHECK(v.status == VerdictStatus::StrictInclusionWitnessed);
  REQUIRE(v.witness);
  CHECK(*v.witness == "1/(t0*t1*t2)");

  const auto& table = v.details["table"];
  REQUIRE(table.size() == 4);
  CHECK(table[0]["h1_curve"] == 1);  // genus one
  CHECK(table[0]["h0_curve"] == 1);
  CHECK(table[1]["h1_curve"] == 0);
  CHECK(table[1]["h0_curve"] == 3);
  CHECK(table[3]["h0_curve"] == 9);
  CHECK(table[3]["h1_curve"] == 0);

  // kernel dimensions do not feel a rescaling of the cubic
  auto ring = Ring::rationals({"t0", "t1", "t2"});
  TheoremVerdict scaled = counterexample_gabber(
      parse_poly(ring, "7*t0^3 + 7*t1^3 + 7*t2^3"), 0, 3);
  for (std::size_t r = 0; r < 4; ++r)
    CHECK(scaled.details["table"][r]["h1_curve"] ==
          v.details["table"][r]["h1_curve"]);

  // a different (possibly singular) cubic still yields a kernel report
  TheoremVerdict other =
      counterexample_gabber(parse_poly(ring, "t0^2*t1 + t2^3"), 0, 1);
  CHECK(other.details["table"][0]["h1_curve"] == 1);

  CHECK_THROWS_AS(counterexample_gabber(parse_poly(ring, "t0^2 + t1^3")),
                  input_error);
  CHECK_THROWS_AS(counterexample_gabber(Poly::zero(ring)), input_error);
}

TEST_CASE("strict normal crossings data are screened syntactically") {
  TheoremVerdict ok = check_snc(3, {{"t1", 2}, {"t2", 1}}, {"t1", "t3"});
  CHECK(ok.status == VerdictStatus::Pass);
  CHECK(ok.details["divisor_meets_center"] ==
        nlohmann::ordered_json::array({"t1"}));

  CHECK(check_snc(2, {}, {}).status == VerdictStatus::Pass);

  TheoremVerdict bad = check_snc(2, {{"t1", 1}}, {"t1 + t2^2"});
  CHECK(bad.status == VerdictStatus::Fail);
  REQUIRE(bad.witness);

  CHECK(check_snc(2, {{"t1", 0}}, {}).status == VerdictStatus::Fail);
  CHECK(check_snc(2, {{"t1", 1}, {"t1", 2}}, {}).status == VerdictStatus::Fail);
  CHECK(check_snc(2, {{"t1*t2", 1}}, {}).status == VerdictStatus::Fail);
  CHECK(check_snc(1, {{"t9", 1}}, {}).status == VerdictStatus::Fail);
}

TEST_CASE("suite entries carry expectations") {
  SuiteConfig cfg;
  cfg.box_half = 3;
  cfg.property_samples = 50;

  SuiteEntry snc = run_checker("snc", cfg);
  CHECK(snc.verdict.status == VerdictStatus::Pass);
  CHECK(snc.as_expected());

  SuiteEntry nonred = run_checker("nonreduced", cfg);
  CHECK(nonred.expected == VerdictStatus::StrictInclusionWitnessed);
  CHECK(nonred.as_expected());

  CHECK_THROWS_AS(run_checker("nope", cfg), input_error);

  auto [samples, failures] = membership_sweep(cfg.seed, 100);
  CHECK(samples == 100);
  CHECK(failures == 0);
}

TEST_CASE("structured suite reports are byte identical across runs") {
  SuiteConfig cfg;
  cfg.box_half = 3;
  cfg.property_samples = 40;
  SuiteReport a = run_suite({"snc", "flatbc", "nonreduced"}, cfg);
  SuiteReport b = run_suite({"nonreduced", "snc", "flatbc"}, cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.exit_code() == 0);
}

TEST_CASE("enlarging the box never flips a verdict") {
  auto Rxy = Ring::rationals({"x", "y"});
  auto pair = AffineModulusPair::parse(Rxy, "x^2*y^3");
  for (int half : {2, 4, 6})
    CHECK(check_cube_invariance(pair, half).status == VerdictStatus::Pass);

  for (int half : {2, 3, 5})
    CHECK(check_basic_blowup_invariance(2, 0, {3, 2}, half).status ==
          VerdictStatus::Pass);

  for (int half : {2, 3, 5})
    CHECK(check_blowup_pushforward(1, -1, 2, half).status ==
          VerdictStatus::Pass);
}

TEST_CASE("reduced divisors reduce the blowup to the structure sheaf") {
  // exponents all 1: the twist is zero and the cover computes the plain
  // pushforward, which must be invisible for every admissible center
  for (int cdim : {0, 1})
    for (int nfac : {1, 2}) {
      TheoremVerdict v = check_basic_blowup_invariance(
          2, cdim, std::vector<int>(nfac, 1), 4);
      CHECK(v.status == VerdictStatus::Pass);
    }
  for (int cdim : {0, 1, 2}) {
    TheoremVerdict v = check_basic_blowup_invariance(3, cdim, {1, 1}, 3);
    CHECK(v.status == VerdictStatus::Pass);
    CHECK(v.details["exceptional_twist"].get<int>() <= 0);
  }
}

TEST_CASE("checkers are idempotent byte for byte") {
  CHECK(counterexample_gabber_fermat(0, 2).to_json().dump() ==
        counterexample_gabber_fermat(0, 2).to_json().dump());
  CHECK(check_projective_cohomology(2, -3, 3).to_json().dump() ==
        check_projective_cohomology(2, -3, 3).to_json().dump());
  CHECK(check_basic_blowup_invariance(2, 0, {2, 1}, 3).to_json().dump() ==
        check_basic_blowup_invariance(2, 0, {2, 1}, 3).to_json().dump());
  // parallel slice evaluation does not change a verdict either
  CHECK(check_projective_cohomology(2, -3, 3, 3).to_json().dump() ==
        check_projective_cohomology(2, -3, 3).to_json().dump());
}

TEST_CASE("verdict json carries the documented fields") {
  TheoremVerdict v = counterexample_nonreduced();
  auto j = v.to_json();
  for (const char* key :
       {"theorem", "params", "box", "status", "witness", "details"})
    CHECK(j.contains(key));
  CHECK(j["theorem"] == "nonreduced");
  CHECK(j["status"] == "strict-inclusion-witnessed");
  // wall time stays out of the structured form
  CHECK(!j.contains("millis"));
}
