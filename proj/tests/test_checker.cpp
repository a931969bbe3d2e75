#include "doctest.h"
#include "nsr/checker.hpp"
#include "nsr/realizers.hpp"
#include "testgen.hpp"

using namespace nsr;

namespace {
Term rt(const std::string& s) { return parse_term(s, library_resolver()); }

Valuation rho_delta() {
  Valuation rho;
  rho.fo.emplace("d", Individual::diagonal());
  return rho;
}
}  // namespace

TEST_CASE("relation atoms are term-irrelevant at the current state") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  rho.fo.emplace("x", Individual::constant(3));
  CHECK(member(parse_formula("lt(x, d)"), rho, dagger(), 5, cfg).is(Tri::Yes));
  CHECK(member(parse_formula("lt(x, d)"), rho, dagger(), 2, cfg).is(Tri::No));
}

TEST_CASE("atoms hold up to anti-reduction along the trace") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  // set (S get) dagger pumps one state before settling
  Term pump = rt("set (S get) dagger");
  CHECK(member(parse_formula("le(#1, d)"), rho, pump, 0, cfg).is(Tri::Yes));
  // a normal form cannot escape a false atom
  CHECK(member(parse_formula("le(#1, d)"), rho, dagger(), 0, cfg).is(Tri::No));
}

TEST_CASE("standardness atoms") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  rho.fo.emplace("c", Individual::constant(4));
  CHECK(member(parse_formula("st(c)"), rho, dagger(), 0, cfg).is(Tri::Yes));
  CHECK(member(parse_formula("st(d)"), rho, dagger(), 0, cfg).is(Tri::No));
  // vacuous arrow over the empty truth value
  CHECK(member(parse_formula("st(d) -> bot"), rho, dagger(), 3, cfg).is(Tri::Yes));
}

TEST_CASE("natp observation") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  // \x. T x get realizes natp(delta): the identity observation reads the state
  CHECK(member(parse_formula("natp(d)"), rho, rt("$ens0"), 4, cfg).is(Tri::Yes));
  CHECK(member(parse_formula("natp(d)"), rho, rt("$ens0"), 0, cfg).is(Tri::Yes));
  // a realizer of the wrong numeral is rejected
  CHECK(member(parse_formula("natp(d)"), rho, rt("\\k. k #2"), 3, cfg).is(Tri::No));
  CHECK(member(parse_formula("natp(d)"), rho, rt("\\k. k #2"), 2, cfg).is(Tri::Yes));
  // natp_zero / natp_succ
  Valuation rho0;
  rho0.fo.emplace("z", Individual::constant(0));
  CHECK(member(parse_formula("natp(z)"), rho0, rt("$natp_zero"), 5, cfg).is(Tri::Yes));
  CHECK(member(parse_formula("fa_bv x. natp(S(x))"), rho0, rt("$natp_succ"), 2, cfg)
            .is(Tri::Yes));
}

TEST_CASE("implication is generator-bounded") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  CheckResult r = member(parse_formula("le(0, 0) -> le(0, 0)"), rho, rt("\\x. x"), 0, cfg);
  CHECK(r.is(Tri::Yes));
  CHECK(r.generator_bounded);
  // refutation: identity does not turn a true atom into a false one
  CheckResult r2 = member(parse_formula("le(0, 0) -> lt(0, 0)"), rho, rt("\\x. x"), 0, cfg);
  CHECK(r2.is(Tri::No));
}

TEST_CASE("bottom is refuted through the two disjoint test predicates") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  for (const char* t : {"\\x. x", "0", "dagger", "(\\x. x) 0"}) {
    UniversalReport rep = universal(parse_formula("bot"), rho, rt(t), cfg);
    CHECK(rep.aggregate.is(Tri::No));
  }
  // and A -> A is universally accepted
  UniversalReport ok = universal(parse_formula("le(0,0) -> le(0,0)"), rho, rt("\\x. x"), cfg);
  CHECK(ok.aggregate.is(Tri::Yes));
}

TEST_CASE("disjunction is observed through the case probe") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  Formula f = parse_formula("le(0, 0) \\/ lt(0, 0)");
  CHECK(member(f, rho, rt("inl dagger"), 0, cfg).is(Tri::Yes));
  CHECK(member(f, rho, rt("inr dagger"), 0, cfg).is(Tri::No));
  CHECK(member(parse_formula("lt(0, 0) \\/ le(0, 0)"), rho, rt("inr dagger"), 0, cfg)
            .is(Tri::Yes));
  // non-injection normal form
  CHECK(member(f, rho, rt("\\x. x"), 0, cfg).is(Tri::No));
}

TEST_CASE("no transfer for the external standardness formula") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  CHECK(member(parse_formula("exists x. not st(x)"), rho, dagger(), 0, cfg).is(Tri::Yes));
  for (const char* t : {"dagger", "\\x. x", "(dagger, dagger)", "0"}) {
    CHECK(member(parse_formula("ex_st x. not st(x)"), rho, rt(t), 0, cfg).is(Tri::No));
  }
}

TEST_CASE("loop+ universally realizes strict domination of delta over standard numbers") {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.fuel = 10000;
  Valuation rho;
  UniversalReport rep = universal(parse_formula("fa_st x. lt(x, delta_v)"),
                                  rho.with_fo("delta_v", Individual::diagonal()),
                                  rt("\\w. $loop_plus"), cfg);
  CHECK(rep.aggregate.is(Tri::Yes));
}

TEST_CASE("external induction realizer passes over the default range") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  // A(x) := le(x, delta); base dagger; step pumps the state once
  Term t = rt("$rec_st dagger (\\w. \\x. \\dd. set (S get) dd)");
  UniversalReport rep = universal(parse_formula("fa_stbv x. le(x, d)"), rho, t, cfg);
  CHECK(rep.aggregate.is(Tri::Yes));
}

TEST_CASE("overspill realizer") {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.fuel = 20000;
  cfg.generators.push_back(rt("\\w. $loop_plus"));
  Valuation rho = rho_delta();
  Formula f = parse_formula("(fa_st x. le(x, d)) -> exists x. (not st(x) /\\ le(x, d))");
  CheckResult r = member(f, rho, rt("$overspill"), 0, cfg);
  CHECK(r.is(Tri::Yes));
  CHECK(r.generator_bounded);
}

TEST_CASE("witness extraction") {
  CheckConfig cfg = CheckConfig::defaults();
  auto got = extract_witness(rt("\\k. k #2 dagger"), 3, cfg);
  REQUIRE(got);
  CHECK(got->witness == 2);
  CHECK(got->end_state == 3);
  CHECK(alpha_equal(got->payload, dagger()));

  ExtractError err;
  CHECK(!extract_witness(rt("\\k. set #9 (k #2 dagger)"), 0, cfg, &err));
  CHECK(err.kind == ExtractError::StateChanged);
  CHECK(!extract_witness(rt("\\k. dagger k"), 0, cfg, &err));
  CHECK(err.kind == ExtractError::Stuck);
  CHECK(!extract_witness(rt("\\k. 0"), 0, cfg, &err));
  CHECK(err.kind == ExtractError::NonPair);
}

TEST_CASE("ideal extracts the diagonal against the canonical premise") {
  CheckConfig cfg = CheckConfig::defaults();
  for (State s = 0; s <= 8; ++s) {
    auto got = extract_witness(rt("$ideal $u_R_le"), s, cfg);
    REQUIRE(got);
    CHECK(got->witness == s);
    CHECK(got->end_state == s);
  }
}

TEST_CASE("glueing examples") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho = rho_delta();
  rho.fo.emplace("x", Individual::constant(2));
  Formula f = parse_formula("le(x, d)");
  GlueingReport g1 = glueing_check(f, rho, dagger(), 1, cfg);
  CHECK(g1.agree);
  CHECK(g1.lhs.is(Tri::No));
  GlueingReport g2 = glueing_check(f, rho, dagger(), 2, cfg);
  CHECK(g2.agree);
  CHECK(g2.lhs.is(Tri::Yes));
}

TEST_CASE("glueing property on random internal formulas with state-preserving terms") {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.fuel = 3000;
  testgen::Rng rng(77);
  std::vector<Term> pool = {dagger(),
                            rt("\\x. x"),
                            rt("0"),
                            rt("(#1, dagger)"),
                            rt("(\\x. x) dagger"),
                            rt("p1 (dagger, 0)"),
                            rt("inl dagger"),
                            rt("\\k. $T k get")};
  int agreed = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = testgen::random_internal_formula(rng, {"x", "y"}, 3);
    Valuation rho;
    rho.fo.emplace("x", rng.below(2) ? Individual::diagonal()
                                     : Individual::constant(rng.below(6)));
    rho.fo.emplace("y", rng.below(2) ? Individual::modk(2)
                                     : Individual::constant(rng.below(6)));
    Term t = pool[rng.below(pool.size())];
    State s = rng.below(6);
    GlueingReport rep = glueing_check(f, rho, t, s, cfg);
    CHECK(rep.agree);
    agreed += rep.agree ? 1 : 0;
  }
  CHECK(agreed == 200);
}

TEST_CASE("transfer at checker level: constants suffice for internal formulas") {
  CheckConfig full = CheckConfig::defaults();
  CheckConfig consts = full;
  consts.individuals.clear();
  for (std::uint64_t n = 0; n <= 8; ++n)
    consts.individuals.push_back(Individual::constant(n));
  testgen::Rng rng(13);
  std::vector<Term> pool = {dagger(), parse_term("\\x. x"), zero(),
                            parse_term("(\\x. x) dagger")};
  for (int i = 0; i < 60; ++i) {
    Formula body = testgen::random_internal_formula(rng, {"x"}, 2);
    Formula fa = f_forall("x", body);
    Formula ex = f_exists("x", body);
    Valuation rho;
    Term t = pool[rng.below(pool.size())];
    State s = rng.below(4);
    CHECK(member(fa, rho, t, s, full).verdict == member(fa, rho, t, s, consts).verdict);
    CHECK(member(ex, rho, t, s, full).verdict == member(ex, rho, t, s, consts).verdict);
  }
}

TEST_CASE("transfer conversion realizers") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  // A(x) := le(0, x) holds everywhere, with dagger realizing the hypothesis
  cfg.generators.push_back(dagger());
  CHECK(member(parse_formula("(forall x. le(0, x)) -> fa_st x. le(0, x)"), rho,
               rt("$transfer_to_st"), 1, cfg)
            .is(Tri::Yes));
  CHECK(member(parse_formula("(fa_st x. le(0, x)) -> forall x. le(0, x)"), rho,
               rt("$transfer_from_st"), 1, cfg)
            .is(Tri::Yes));
  CHECK(member(parse_formula("(exists x. le(0, x)) -> ex_st x. le(0, x)"), rho,
               rt("$exists_to_st"), 1, cfg)
            .is(Tri::Yes));
  CHECK(member(parse_formula("(ex_st x. le(0, x)) -> exists x. le(0, x)"), rho,
               rt("$exists_from_st"), 1, cfg)
            .is(Tri::Yes));
}

TEST_CASE("refutation is monotone in the generator pool") {
  // enlarging the pool can only strengthen a refutation: nonmember stays
  // nonmember, and membership under the larger pool holds under the smaller
  testgen::Rng rng(61);
  CheckConfig small = CheckConfig::defaults();
  small.generators = {dagger(), lam("x", var("x"))};
  CheckConfig big = small;
  big.generators.push_back(zero());
  big.generators.push_back(parse_term("\\x. \\y. x"));
  big.generators.push_back(parse_term("(0, #1)"));
  for (int i = 0; i < 80; ++i) {
    Formula f = f_arrow(testgen::random_internal_formula(rng, {"x"}, 2),
                        testgen::random_internal_formula(rng, {"x"}, 2));
    Valuation rho;
    rho.fo.emplace("x", Individual::constant(rng.below(5)));
    Term t = rng.below(2) ? lam("z", var("z")) : dagger();
    State s = rng.below(4);
    CheckResult rs = member(f, rho, t, s, small);
    CheckResult rb = member(f, rho, t, s, big);
    if (rs.is(Tri::No)) CHECK(rb.is(Tri::No));
    if (rb.is(Tri::Yes)) CHECK(rs.is(Tri::Yes));
  }
}

TEST_CASE("universal rejects an empty state range") {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.range_lo = 5;
  cfg.range_hi = 2;
  Valuation rho;
  CHECK_THROWS_AS(universal(parse_formula("le(0, 0)"), rho, dagger(), cfg), FormulaError);
}

TEST_CASE("general value restriction is reported unchecked") {
  CheckConfig cfg = CheckConfig::defaults();
  Valuation rho;
  Formula f = f_mapsto(parse_formula("le(0,0)"), parse_formula("le(0,0)"));
  CHECK(member(f, rho, dagger(), 0, cfg).is(Tri::Unknown));
}
