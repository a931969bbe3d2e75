#include "doctest.h"
#include "nsr/term.hpp"
#include "testgen.hpp"

using namespace nsr;

TEST_CASE("substitution examples") {
  // free occurrence replaced
  Term t1 = substitute(lam("y", var("x")), "x", zero());
  CHECK(alpha_equal(t1, lam("y", zero())));
  // bound occurrence untouched
  Term t2 = substitute(lam("x", var("x")), "x", zero());
  CHECK(alpha_equal(t2, lam("x", var("x"))));
  // capture avoided by renaming
  Term t3 = substitute(lam("y", var("x")), "x", var("y"));
  REQUIRE(t3->tag == Tag::Abs);
  CHECK(t3->name != "y");
  CHECK(t3->a->tag == Tag::Var);
  CHECK(t3->a->name == "y");
  CHECK(alpha_equal(t3, lam("fresh", var("y"))));
}

TEST_CASE("substitute is identity when the variable is not free") {
  testgen::Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    Term t = testgen::random_closed_term(rng);
    Term u = testgen::random_closed_term(rng, 2);
    CHECK(substitute(t, "zz", u).get() == t.get());
  }
}

TEST_CASE("numerals") {
  CHECK(alpha_equal(numeral(0), zero()));
  CHECK(alpha_equal(numeral(2), app(succ(), app(succ(), zero()))));
  CHECK(is_value(numeral(7)));
  CHECK(print_term(numeral(5)) == "#5");
  CHECK(alpha_equal(parse_term("#5"), numeral(5)));
  CHECK(print_term(numeral(0)) == "0");
  CHECK(as_numeral(numeral(9)) == 9);
  CHECK(!as_numeral(app(succ(), dagger())).has_value());
}

TEST_CASE("parsing examples") {
  CHECK(alpha_equal(parse_term("\\x. x"), lam("x", var("x"))));
  Term ex = parse_term("set (S get) 0");
  CHECK(alpha_equal(ex, app(app(set(), app(succ(), get())), zero())));
  Term cs = parse_term("case inl 0 { inl a -> a | inr b -> S b }");
  REQUIRE(cs->tag == Tag::Case);
  CHECK(cs->a->tag == Tag::Inl);
  CHECK(alpha_equal(cs->c, app(succ(), var("b"))));
  CHECK_THROWS_AS(parse_term("\\x."), ParseError);
  CHECK_THROWS_AS(parse_term("(x"), ParseError);
  CHECK_THROWS_AS(parse_term("case x { inr a -> a | inl b -> b }"), ParseError);
}

TEST_CASE("free variables and closedness") {
  Term t = parse_term("\\x. x y");
  CHECK(free_vars(t) == std::vector<std::string>{"y"});
  CHECK(!is_closed(t));
  CHECK(is_closed(parse_term("\\x. \\y. x y")));
}

TEST_CASE("value grammar") {
  CHECK(is_value(parse_term("0")));
  CHECK(is_value(parse_term("S (S 0)")));
  CHECK(is_value(parse_term("\\x. get")));
  CHECK(is_value(parse_term("(#1, #2)")));
  CHECK(is_value(parse_term("inl #1")));
  CHECK(is_value(parse_term("inr dagger")));
  CHECK(is_value(parse_term("dagger")));
  CHECK(is_value(parse_term("@probe")));
  CHECK(!is_value(parse_term("get")));
  CHECK(!is_value(parse_term("set")));
  CHECK(!is_value(parse_term("(get, 0)")));
  CHECK(!is_value(parse_term("inl get")));
  CHECK(!is_value(parse_term("(\\x. x) 0")));
}

// direct recursive oracle for the value grammar
namespace {
bool value_oracle(const Term& t) {
  switch (t->tag) {
    case Tag::Zero:
    case Tag::Abs:
    case Tag::Dagger:
    case Tag::Atom:
      return true;
    case Tag::App:
      return t->a->tag == Tag::Succ && value_oracle(t->b);
    case Tag::Pair:
      return value_oracle(t->a) && value_oracle(t->b);
    case Tag::Inl:
    case Tag::Inr:
      return value_oracle(t->a);
    default:
      return false;
  }
}
}  // namespace

TEST_CASE("value decision agrees with the grammar oracle on random terms") {
  testgen::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    Term t = testgen::random_closed_term(rng);
    CHECK(is_value(t) == value_oracle(t));
  }
}

TEST_CASE("print/parse round trip on random terms") {
  testgen::Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    Term t = testgen::random_closed_term(rng);
    Term back = parse_term(print_term(t));
    CHECK(alpha_equal(back, t));
  }
}

TEST_CASE("alpha equality identifies renamings only") {
  CHECK(alpha_equal(parse_term("\\x. x"), parse_term("\\y. y")));
  CHECK(!alpha_equal(parse_term("\\x. x"), parse_term("\\y. 0")));
  CHECK(!alpha_equal(parse_term("@a"), parse_term("@b")));
  // free variables must match by name
  CHECK(!alpha_equal(var("x"), var("y")));
  CHECK(alpha_equal(parse_term("\\x. x z"), parse_term("\\y. y z")));
}

TEST_CASE("resolver splices references") {
  TermResolver r = [](const std::string& n) -> std::optional<Term> {
    if (n == "two") return numeral(2);
    return std::nullopt;
  };
  CHECK(alpha_equal(parse_term("S $two", r), numeral(3)));
  CHECK_THROWS_AS(parse_term("$nope", r), ParseError);
}
