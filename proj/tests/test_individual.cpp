#include "doctest.h"
#include "nsr/checker.hpp"
#include "nsr/individual.hpp"
#include "testgen.hpp"

using namespace nsr;

TEST_CASE("standardness certificates") {
  CHECK(Individual::constant(7).is_standard() == Tri::Yes);
  CHECK(Individual::diagonal().is_standard() == Tri::No);
  CHECK(Individual::modk(2).is_standard() == Tri::No);
  CHECK(Individual::modk(1).is_standard() == Tri::Yes);
  // a table that eventually disagrees with its tail is nonstandard
  CHECK(Individual::table_then({0, 0, 5}, 0).is_standard() == Tri::No);
  CHECK(Individual::table_then({3, 3}, 3).is_standard() == Tri::Yes);
}

TEST_CASE("nonstandard evidence states yield distinct values") {
  for (const Individual& f :
       {Individual::diagonal(), Individual::modk(2), Individual::table_then({9}, 1)}) {
    const auto& c = f.certificate();
    REQUIRE(c.kind == Individual::Certificate::Nonstandard);
    CHECK(f(c.witness_a) != f(c.witness_b));
  }
}

TEST_CASE("standard certificates validate on every probe range") {
  for (State hi : {8u, 32u, 64u}) {
    CHECK(Individual::constant(3).is_standard(0, hi) == Tri::Yes);
    CHECK(Individual::diagonal().is_standard(0, hi) == Tri::No);
  }
}

TEST_CASE("pointwise arithmetic commutes with evaluation") {
  testgen::Rng rng(3);
  std::vector<Individual> pool = {Individual::constant(2), Individual::diagonal(),
                                  Individual::modk(3), Individual::table_then({7, 1}, 0)};
  for (int i = 0; i < 100; ++i) {
    const Individual& f = pool[rng.below(pool.size())];
    const Individual& g = pool[rng.below(pool.size())];
    Individual s = Individual::add(f, g);
    Individual p = Individual::mul(f, g);
    for (State st = 0; st <= 64; ++st) {
      CHECK(s(st) == f(st) + g(st));
      CHECK(p(st) == f(st) * g(st));
    }
  }
}

TEST_CASE("individual literals parse") {
  CHECK(Individual::parse("const 4")(9) == 4);
  CHECK(Individual::parse("delta")(9) == 9);
  CHECK(Individual::parse("mod 2")(9) == 1);
  Individual t = Individual::parse("table [1,2,3] then 0");
  CHECK(t(0) == 1);
  CHECK(t(2) == 3);
  CHECK(t(5) == 0);
  CHECK(Individual::parse("delta + const 2")(5) == 7);
  CHECK(Individual::parse("delta * delta")(4) == 16);
  CHECK_THROWS(Individual::parse("bogus"));
}

TEST_CASE("expression individuals derive certificates") {
  Valuation rho;
  rho.fo.emplace("x", Individual::constant(2));
  rho.fo.emplace("d", Individual::diagonal());
  Formula shim = parse_formula("le(add(x, #3), 0)");
  Individual f = expr_individual(shim->exprs[0], rho);
  CHECK(f(0) == 5);
  CHECK(f.certificate().kind == Individual::Certificate::Standard);
  CHECK(f.is_standard() == Tri::Yes);

  Formula shim2 = parse_formula("le(add(d, x), 0)");
  Individual g = expr_individual(shim2->exprs[0], rho);
  CHECK(g(3) == 5);
  CHECK(g.is_standard() == Tri::No);

  // constant sample over a nonstandard leaf stays unknown
  Formula shim3 = parse_formula("le(mul(d, 0), 0)");
  Individual h = expr_individual(shim3->exprs[0], rho.with_fo("d", Individual::diagonal()));
  CHECK(h(17) == 0);
  CHECK(h.is_standard() == Tri::Unknown);
}

TEST_CASE("predicate application is pointwise at the current state") {
  CheckConfig cfg = CheckConfig::defaults();
  PredFamily fam = builtin_family("to_numeral");
  // membership of #3 in "reduces to the numeral of delta at s"
  CHECK(apply_predicate(fam, {Individual::diagonal()}, numeral(3), 3, cfg) == Tri::Yes);
  CHECK(apply_predicate(fam, {Individual::diagonal()}, numeral(3), 5, cfg) == Tri::No);
  PredFamily full = builtin_family("full");
  CHECK(apply_predicate(full, {}, dagger(), 0, cfg) == Tri::Yes);
  CHECK_THROWS_AS(apply_predicate(fam, {}, numeral(0), 0, cfg), FormulaError);
}
