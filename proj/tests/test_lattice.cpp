#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "modcoh/lattice.hpp"

using namespace modcoh;

TEST_CASE("standard cover of P^1") {
  CoveredSpace cs = projective_cover(1);
  REQUIRE(cs.chart_count() == 2);

  // U0 carries t1/t0 but not t0/t1
  CHECK(cs.chart_rings[0].contains({-1, 1}));
  CHECK(!cs.chart_rings[0].contains({1, -1}));
  CHECK(cs.chart_rings[1].contains({1, -1}));

  // the intersection carries every degree-zero Laurent monomial
  LineBundleDatum o0{cs, cs.chart_rings};
  SectionLattice both = o0.on_subset(0b11);
  CHECK(both.contains({-5, 5}));
  CHECK(both.contains({3, -3}));
  CHECK(!both.contains({1, 0}));

  CHECK_THROWS_AS(projective_cover(0), error);
}

TEST_CASE("triple intersection on P^2 and the top witness monomial") {
  CoveredSpace cs = projective_cover(2);
  REQUIRE(cs.chart_count() == 3);

  LineBundleDatum om3 = projective_bundle(2, -3);
  const Exps witness = {-1, -1, -1};
  for (std::uint32_t k = 0; k < 3; ++k)
    CHECK(!om3.on_subset(1u << k).contains(witness));
  CHECK(om3.on_subset(0b111).contains(witness));
  CHECK(om3.on_subset(0b011).contains({-2, -1, 0}));
}

TEST_CASE("blowup charts of A^2") {
  CoveredSpace cs = blowup_cover(1);
  REQUIRE(cs.chart_count() == 2);
  // k[t0, t1/t0]
  CHECK(cs.chart_rings[0].contains({1, 0}));
  CHECK(cs.chart_rings[0].contains({-1, 1}));
  CHECK(!cs.chart_rings[0].contains({1, -1}));
  // k[t0/t1, t1]
  CHECK(cs.chart_rings[1].contains({1, -1}));
  CHECK(!cs.chart_rings[1].contains({-1, 1}));

  // O(0) global sections are the polynomial monomials
  LineBundleDatum o0 = blowup_bundle(1, 0);
  auto in_h0 = [&](const Exps& e) {
    return o0.sections[0].contains(e) && o0.sections[1].contains(e);
  };
  CHECK(in_h0({0, 0}));
  CHECK(in_h0({2, 1}));
  CHECK(!in_h0({-1, 1}));
  CHECK(!in_h0({1, -1}));

  // O(1) global sections need total degree >= 1
  LineBundleDatum o1 = blowup_bundle(1, 1);
  auto in_h0_1 = [&](const Exps& e) {
    return o1.sections[0].contains(e) && o1.sections[1].contains(e);
  };
  CHECK(!in_h0_1({0, 0}));
  CHECK(in_h0_1({1, 0}));
  CHECK(in_h0_1({0, 1}));
  CHECK(in_h0_1({2, 3}));
}

TEST_CASE("every chart lattice includes into every larger intersection") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> exp(-5, 5);
  std::vector<LineBundleDatum> bundles = {
      projective_bundle(2, -3), projective_bundle(3, 2), blowup_bundle(2, -2),
      product_with_line(blowup_bundle(1, 1))};
  for (const auto& b : bundles) {
    const std::size_t m = b.space.chart_count();
    std::uniform_int_distribution<std::uint32_t> subset(1, (1u << m) - 1);
    for (int trial = 0; trial < 400; ++trial) {
      Exps d(b.space.vars.size());
      for (auto& x : d) x = exp(rng);
      std::uint32_t s = subset(rng);
      std::uint32_t t = s | subset(rng);
      if (b.on_subset(s).contains(d)) CHECK(b.on_subset(t).contains(d));
    }
  }
}

TEST_CASE("product with the projective line") {
  // a point gives the two-chart cover of P^1 itself
  CoveredSpace pt_line = product_with_line(point_cover());
  REQUIRE(pt_line.chart_count() == 2);
  CHECK(pt_line.vars == std::vector<std::string>{"t"});
  CHECK(pt_line.chart_rings[0].contains({3}));
  CHECK(!pt_line.chart_rings[0].contains({-3}));
  CHECK(pt_line.chart_rings[1].contains({-3}));

  // A^1 x P^1: charts Q[x][t] and Q[x][1/t]
  CoveredSpace affine;
  affine.vars = {"x"};
  affine.chart_names = {"A"};
  SectionLattice L;
  L.nvars = 1;
  L.add(var_at_least(1, 0, 0, 0));
  affine.chart_rings = {L};
  CoveredSpace prod = product_with_line(affine);
  REQUIRE(prod.chart_count() == 2);
  CHECK(prod.chart_rings[0].contains({2, 5}));
  CHECK(!prod.chart_rings[0].contains({-1, 5}));
  CHECK(!prod.chart_rings[0].contains({2, -5}));
  CHECK(prod.chart_rings[1].contains({2, -5}));
  // x stays non-invertible on the intersection, t inverts
  LineBundleDatum datum{prod, prod.chart_rings};
  SectionLattice meet = datum.on_subset(0b11);
  CHECK(meet.contains({0, 7}));
  CHECK(meet.contains({0, -7}));
  CHECK(!meet.contains({-1, 0}));

  // chart-count product
  CHECK(product_with_line(blowup_cover(1)).chart_count() == 4);
  CHECK(product_with_line(blowup_cover(1)).vars.back() == "t");

  // fresh variable name when "t" is taken
  CHECK(product_with_line(pt_line).vars.back() == "t_");
}
