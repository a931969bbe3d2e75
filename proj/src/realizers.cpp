#include "nsr/realizers.hpp"

#include <map>
#include <stdexcept>

namespace nsr {

namespace {

struct Library {
  std::vector<NamedRealizer> entries;
  std::map<std::string, Term> by_name;

  void add(const std::string& name, const std::string& src, const std::string& claim,
           const std::string& anchor) {
    TermResolver r = [this](const std::string& n) -> std::optional<Term> {
      auto it = by_name.find(n);
      if (it == by_name.end()) return std::nullopt;
      return it->second;
    };
    Term t = parse_term(src, r);
    if (!is_closed(t))
      throw std::logic_error("realizer " + name + " is not closed");
    entries.push_back({name, t, claim, anchor});
    by_name[name] = t;
  }
};

const Library& lib() {
  static const Library L = [] {
    Library l;

    // arithmetic sugar (rec-coded)
    l.add("k_true", "\\x. \\y. x", "boolean selector", "arithmetic sugar");
    l.add("k_false", "\\x. \\y. y", "boolean selector", "arithmetic sugar");
    l.add("add", "\\x. \\y. rec x (\\p. \\r. S r) y", "addition on numerals",
          "arithmetic sugar");
    l.add("mul", "\\x. \\y. rec 0 (\\p. \\r. $add x r) y", "multiplication on numerals",
          "arithmetic sugar");
    l.add("pred", "\\n. rec 0 (\\p. \\r. p) n", "predecessor on numerals",
          "arithmetic sugar");
    l.add("iszero", "\\n. rec $k_true (\\p. \\r. $k_false) n", "zero test",
          "arithmetic sugar");
    l.add("eq_nat", "\\m. rec $iszero (\\p. \\e. \\k. rec $k_false (\\q. \\r. e q) k) m",
          "equality test on numerals; eq_nat m n t u selects t when m = n",
          "arithmetic sugar");
    l.add("iseven", "\\n. rec $k_true (\\p. \\r. \\x. \\y. r y x) n", "parity selector",
          "arithmetic sugar");
    l.add("next_odd_t", "\\n. $iseven n (S n) n",
          "lowest odd number greater than or equal to the argument",
          "state-sensitivity diagnostics");
    l.add("fact", "\\n. rec #1 (\\k. \\r. $mul (S k) r) n", "factorial",
          "arithmetic sugar");

    // core stateful terms
    l.add("T", "\\z. \\x. (rec (\\y. y 0) (\\x. \\y. \\z. y (\\x. z (S x))) x) z",
          "storage operator: T t u unrolls u to its numeral and hands it to t",
          "storage operator");
    l.add("pair_probe", "\\x. \\y. (x, y)", "pairing probe for witness extraction",
          "witness extraction");
    l.add("incr", "\\x. set (S get) x", "raises the state by one, continues as x",
          "stateful reduction");
    l.add("incr0", "set (S get) 0", "raises the state by one and reduces to 0",
          "confluence counterexample");
    l.add("Y", "\\f. (\\x. f (x x)) (\\x. f (x x))", "call-by-name fixed point",
          "recursion encoding");
    l.add("loop_plus", "$Y $incr", "pumps the state without terminating",
          "unbounded state growth");

    // natural-number realizers
    l.add("natp_zero", "\\x. x 0", "natp(0)", "by-value naturals");
    l.add("natp_succ", "\\x. \\y. y (S x)", "fa_bv x. natp(S(x))", "by-value naturals");
    l.add("ens0", "\\x. $T x get", "natp(delta)", "existence of nonstandard elements");
    l.add("ens0_ex", "\\k. $T k get dagger", "ex_bv x. not st(x)",
          "existence of nonstandard elements");

    // relativization bridges
    l.add("rel_fa_to_n", "$T", "fa_bv x. A -> fa_n x. A", "relativization");
    l.add("rel_fa_from_n", "\\x. x", "fa_n x. A -> fa_bv x. A", "relativization");
    l.add("rel_ex_to_n", "\\z. z $pair_probe", "ex_bv x. A -> ex_n x. A",
          "relativization");
    l.add("rel_ex_from_n", "\\x. \\y. $T y (p1 x) (p2 x)", "ex_n x. A -> ex_bv x. A",
          "relativization");

    // nonstandard principles
    l.add("diag_wit", "\\x. \\y. set y dagger", "fa_stbv y. le(y, delta)",
          "diagonalization");
    l.add("diag", "\\z. $T z get (\\x. \\y. set y dagger)",
          "ex_bv x. fa_stbv y. le(y, x)", "diagonalization");
    l.add("ideal",
          "\\x. \\y. $T y (p1 ($T (x dagger) get $pair_probe)) (\\y. \\z. set z y)",
          "(fa_stbv n. ex_bv x. fa_stbv y. (le(y,n) -> R(x,y))) -> ex_bv x. fa_stbv y. R(x,y)",
          "Idealization");
    l.add("transfer_to_st", "\\x. \\y. x", "(forall x. A) -> fa_st x. A", "Transfer");
    l.add("transfer_from_st", "\\x. x dagger", "(fa_st x. A) -> forall x. A",
          "Transfer");
    l.add("exists_to_st", "\\x. (dagger, x)", "(exists x. A) -> ex_st x. A", "Transfer");
    l.add("exists_from_st", "\\x. p2 x", "(ex_st x. A) -> exists x. A", "Transfer");
    l.add("overspill", "\\x. (dagger, x dagger)",
          "(fa_st x. A) -> exists x. (not st(x) /\\ A)", "Overspill");
    l.add("underspill", "\\x. \\y. (\\z. y (dagger, z)) (x dagger)",
          "(forall x. (not st(x) -> A)) -> not not ex_st x. A", "Underspill");
    l.add("rec_st", "\\u. \\v. \\w. rec u (\\x. \\d. v dagger x d)",
          "A(0) -> (fa_stbv x. (A(x) -> A(S(x)))) -> fa_stbv x. A(x)",
          "external induction");

    // canonical Idealization premises
    l.add("u_R_le", "\\w. \\n. \\k. k n (\\w1. \\m. \\p. p)",
          "premise for R(x,y) = le(y,x)", "Idealization");
    l.add("u_R_lt", "\\w. \\n. \\k. k (S n) (\\w1. \\m. \\p. p)",
          "premise for R(x,y) = lt(y,x)", "Idealization");
    l.add("u_R_eq_delta", "\\w. \\n. \\k. $T k get (\\w1. \\m. \\p. p)",
          "diagonal-witness premise for R(x,y) = req(x,y)", "Idealization");
    l.add("u_R_div", "\\w. \\n. \\k. k ($pred ($fact (S n))) (\\w1. \\m. \\p. p)",
          "factorial-witness premise for succ_divides", "Idealization");

    // LLPO family
    l.add("t_leq0", "\\x. \\n. \\y. x", "A(0) -> (fa_bv z. le(z,0) -> A(z))",
          "LLPO: bounded realizer, base");
    l.add("t_leqS", "\\n. \\x. \\y. \\m. \\z. $eq_nat m (S n) y (x m z)",
          "A_leq(n) -> A(S(n)) -> A_leq(S(n))", "LLPO: bounded realizer, step");
    l.add("t_delta", "\\x. \\w. \\y. x y (inr $loop_plus)",
          "A_leq(delta) -> fa_stbv y. A(y)", "LLPO: discharge the bound at delta");
    l.add("t_or",
          "\\h. \\z. \\x. \\w. \\y. case h z x w y { inl a -> inr a | inr b -> inl b }",
          "premise symmetry", "LLPO: disjunct swap");
    l.add("t_0",
          "\\h. \\w. \\x. case h dagger x dagger 0 { inl a -> inl a | inr b -> inr ($t_leq0 b) }",
          "Phi(x, 0)", "LLPO: inner induction, base");
    l.add("t_S",
          "\\h. \\w. \\x. \\z. \\y. \\v. case v { inl a -> inl a | inr b -> "
          "case h dagger x dagger (S y) { inl c -> inl c | inr d -> inr ($t_leqS y b d) } }",
          "Phi(x, y) -> Phi(x, S(y))", "LLPO: inner induction, step");
    l.add("t_phi", "\\h. \\w. \\x. $rec_st ($t_0 h w x) ($t_S h w x)",
          "fa_stbv x. fa_stbv y. Phi(x, y)", "LLPO: inner induction");
    l.add("u_0",
          "\\h. case h dagger 0 dagger 0 { inl a -> inl ($t_leq0 a) | inr b -> inr ($t_leq0 b) }",
          "A_leq(0) \\/ B_leq(0)", "LLPO: outer induction, base");
    l.add("t_Delta",
          "\\h. \\w. \\x. \\v. case $t_phi h dagger (S x) dagger (S x) "
          "{ inl c -> inl ($t_leqS x v c) | inr d -> inr d }",
          "A_leq(x) -> A_leq(S(x)) \\/ B_leq(S(x))", "LLPO: asymmetric step");
    l.add("u_S",
          "\\h. \\w. \\x. \\d. case d { inl a -> $t_Delta h w x a | "
          "inr b -> case $t_Delta ($t_or h) w x b { inl p -> inr p | inr q -> inl q } }",
          "(A_leq(x) \\/ B_leq(x)) -> (A_leq(S(x)) \\/ B_leq(S(x)))",
          "LLPO: outer induction, step");
    l.add("t_aux", "\\h. $rec_st ($u_0 h) ($u_S h)", "fa_stbv x. (A_leq(x) \\/ B_leq(x))",
          "LLPO: outer induction");
    l.add("t_llpo",
          "\\h. case $t_aux h dagger get { inl a -> inl ($t_delta a) | inr b -> inr ($t_delta b) }",
          "H(A,B) -> (fa_stbv x. A(x)) \\/ (fa_stbv y. B(y))", "LLPO");

    // LLPO scenario premises
    l.add("h_left", "\\z. \\x. \\w. \\y. inl dagger",
          "premise realizer always choosing the left disjunct", "LLPO scenarios");
    l.add("h_right", "\\z. \\x. \\w. \\y. inr dagger",
          "premise realizer always choosing the right disjunct", "LLPO scenarios");
    l.add("h_parity", "\\z. \\x. \\w. \\y. $iseven x (inl dagger) (inr dagger)",
          "premise realizer deciding by the parity of x", "LLPO scenarios");

    // evidenced frame
    l.add("e_id", "\\x. x", "reflexivity evidence", "evidenced frame");
    l.add("e_top", "\\x. x", "top evidence", "evidenced frame");
    l.add("e_fst", "\\x. p1 x", "first projection evidence", "evidenced frame");
    l.add("e_snd", "\\x. p2 x", "second projection evidence", "evidenced frame");
    l.add("e_eval", "\\x. (p1 x) (p2 x)", "evaluation evidence", "evidenced frame");

    // state-sensitivity diagnostics
    l.add("slice_select", "rec (\\x. p1 x) (\\x. \\y. \\z. p2 z) get",
          "projects the first component in state 0 and the second in state 1",
          "state-sensitivity diagnostics");
    l.add("odd_landing", "set ($next_odd_t get) (\\x. x)",
          "always lands in an odd state", "state-sensitivity diagnostics");

    return l;
  }();
  return L;
}

}  // namespace

const std::vector<NamedRealizer>& realizer_library() { return lib().entries; }

std::optional<Term> find_realizer(const std::string& name) {
  auto it = lib().by_name.find(name);
  if (it == lib().by_name.end()) return std::nullopt;
  return it->second;
}

const NamedRealizer* find_realizer_entry(const std::string& name) {
  for (const auto& e : lib().entries)
    if (e.name == name) return &e;
  return nullptr;
}

TermResolver library_resolver() {
  return [](const std::string& n) { return find_realizer(n); };
}

Term storage_T() { return *find_realizer("T"); }
Term pairing_probe() { return *find_realizer("pair_probe"); }
Term frame_id() { return *find_realizer("e_id"); }
Term frame_top() { return *find_realizer("e_top"); }
Term frame_fst() { return *find_realizer("e_fst"); }
Term frame_snd() { return *find_realizer("e_snd"); }
Term frame_eval() { return *find_realizer("e_eval"); }

Term frame_compose(const Term& e1, const Term& e2) {
  return lam("x", app(e2, app(e1, var("x"))));
}
Term frame_pair(const Term& e1, const Term& e2) {
  return lam("x", pair(app(e1, var("x")), app(e2, var("x"))));
}
Term frame_lambda(const Term& e) {
  return lam("x", lam("y", app(e, pair(var("x"), var("y")))));
}

}  // namespace nsr
