// Acceptance suite: runs every operational criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exact-match criteria allow no
// slack; the randomized suites allow zero disagreements.
//
// Usage: nsr_acceptance [corpus-dir]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "nsr/checker.hpp"
#include "nsr/claims.hpp"
#include "nsr/realizers.hpp"
#include "nsr/typing.hpp"
#include "testgen.hpp"

using namespace nsr;

namespace {

std::string g_corpus = "corpus";

Term rt(const std::string& s) { return parse_term(s, library_resolver()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Failure {
  std::string detail;
};

#define ACCEPT_CHECK(cond, msg)                   \
  do {                                            \
    if (!(cond)) throw Failure{msg};              \
  } while (0)

// 1. From state 0, call-by-name lands on #2 in state 2 and call-by-value on
//    #1 in state 1. Exact.
void criterion_confluence() {
  Term t = rt("(\\x. $add ($add get x) x) $incr0");
  Trace cbn = reduce({t, 0});
  ACCEPT_CHECK(cbn.outcome == Outcome::Normal && cbn.final.state == 2 &&
                   alpha_equal(cbn.final.term, numeral(2)),
               "call-by-name must end on #2 in state 2");
  Trace cbv = reduce_cbv({t, 0});
  ACCEPT_CHECK(cbv.outcome == Outcome::Normal && cbv.final.state == 1 &&
                   alpha_equal(cbv.final.term, numeral(1)),
               "call-by-value must end on #1 in state 1");
}

// 2. T t #n lands on t #n in the same state for n in 0..32, s in 0..8;
//    T t get lands on t #s for s in 0..16. Exact.
void criterion_storage() {
  for (std::uint64_t n = 0; n <= 32; ++n) {
    for (State s = 0; s <= 8; ++s) {
      Trace tr = reduce_quiet({app(storage_T(), atom("probe"), numeral(n)), s});
      ACCEPT_CHECK(tr.outcome == Outcome::Normal && tr.final.state == s &&
                       alpha_equal(tr.final.term, app(atom("probe"), numeral(n))),
                   "storage unrolling failed at n=" + std::to_string(n) +
                       " s=" + std::to_string(s));
    }
  }
  for (State s = 0; s <= 16; ++s) {
    Trace tr = reduce_quiet({app(storage_T(), atom("probe"), get()), s});
    ACCEPT_CHECK(tr.outcome == Outcome::Normal && tr.final.state == s &&
                     alpha_equal(tr.final.term, app(atom("probe"), numeral(s))),
                 "storage against get failed at s=" + std::to_string(s));
  }
}

// 3. (\x. \y. set y dagger) dagger #n from state s ends at state max(n, s)
//    for all (n, s) in 0..16 squared. Exact.
void criterion_diagonalization() {
  Term wit = *find_realizer("diag_wit");
  for (std::uint64_t n = 0; n <= 16; ++n) {
    for (State s = 0; s <= 16; ++s) {
      Trace tr = reduce_quiet({app(wit, dagger(), numeral(n)), s});
      ACCEPT_CHECK(tr.outcome == Outcome::Normal &&
                       tr.final.state == std::max<State>(n, s) &&
                       alpha_equal(tr.final.term, dagger()),
                   "diagonalization failed at n=" + std::to_string(n) +
                       " s=" + std::to_string(s));
    }
  }
}

// 4. extract_witness(ideal u_R, s) = (s, _, s) for R(x,y) = le(y,x) and
//    s in 0..8; applying the payload to every m <= s terminates and the
//    relation holds at the reached state.
void criterion_idealization() {
  CheckConfig cfg = CheckConfig::defaults();
  Term t = rt("$ideal $u_R_le");
  for (State s = 0; s <= 8; ++s) {
    ExtractError err;
    auto got = extract_witness(t, s, cfg, &err);
    ACCEPT_CHECK(got.has_value(),
                 "extraction failed at s=" + std::to_string(s) + ": " +
                     to_string(err.kind));
    ACCEPT_CHECK(got->witness == s && got->end_state == s,
                 "expected witness/state " + std::to_string(s));
    for (std::uint64_t m = 0; m <= s; ++m) {
      Trace tr = reduce_quiet({app(got->payload, dagger(), numeral(m)), s}, cfg.fuel);
      ACCEPT_CHECK(tr.outcome == Outcome::Normal,
                   "payload application did not terminate");
      ACCEPT_CHECK(eval_rel("le", m, got->witness),
                   "relation le(m, witness) fails at the reached state for m=" +
                       std::to_string(m));
    }
  }
}

// 5. The LLPO realizer selects the left tag for the true-left scenario and
//    the payload passes universal membership for the selected disjunct over
//    states 0..8 and arguments 0..8; the mirrored scenario selects the right
//    tag. Fuel 100000.
void criterion_llpo() {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.fuel = 100000;
  cfg.individuals.clear();
  for (std::uint64_t n = 0; n <= 8; ++n)
    cfg.individuals.push_back(Individual::constant(n));
  Valuation rho;

  auto probe_tag = [&](const Term& t, State s) -> std::pair<std::string, Term> {
    Term probe = case_of(t, "v", app(atom("TAG_L"), var("v")), "w",
                         app(atom("TAG_R"), var("w")));
    Trace tr = reduce_quiet({probe, s}, cfg.fuel);
    ACCEPT_CHECK(tr.outcome == Outcome::Normal, "tag observation did not normalize");
    const Term& nf = tr.final.term;
    ACCEPT_CHECK(nf->tag == Tag::App && nf->a->tag == Tag::Atom, "untagged observation");
    return {nf->a->name, nf->b};
  };

  Formula left_true = parse_formula("fa_stbv x. le(0, 0)");
  for (State s = 0; s <= 8; ++s) {
    auto [tag, payload] = probe_tag(rt("$t_llpo $h_left"), s);
    ACCEPT_CHECK(tag == "TAG_L", "true-left scenario must select the left tag at s=" +
                                     std::to_string(s));
    UniversalReport rep = universal(left_true, rho, payload, cfg);
    ACCEPT_CHECK(rep.aggregate.is(Tri::Yes),
                 "left payload fails universal membership from s=" + std::to_string(s));
  }
  Formula right_true = parse_formula("fa_stbv y. le(0, 0)");
  for (State s = 0; s <= 8; ++s) {
    auto [tag, payload] = probe_tag(rt("$t_llpo $h_right"), s);
    ACCEPT_CHECK(tag == "TAG_R", "mirrored scenario must select the right tag at s=" +
                                     std::to_string(s));
    UniversalReport rep = universal(right_true, rho, payload, cfg);
    ACCEPT_CHECK(rep.aggregate.is(Tri::Yes),
                 "right payload fails universal membership from s=" + std::to_string(s));
  }
}

// 6. 200 randomized internal-fragment triples: sliced membership agrees with
//    truncated membership. Zero disagreements.
void criterion_glueing() {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.fuel = 3000;
  testgen::Rng rng(20260808);
  std::vector<Term> pool = {dagger(),
                            rt("\\x. x"),
                            zero(),
                            rt("(#1, dagger)"),
                            rt("(\\x. x) dagger"),
                            rt("p1 (dagger, 0)"),
                            rt("inl dagger"),
                            rt("inr (\\x. x)"),
                            rt("\\k. $T k get")};
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
    ACCEPT_CHECK(rep.agree, "disagreement on triple " + std::to_string(i) + ": " +
                                print_formula(f) + " with " + print_term(t) +
                                " at state " + std::to_string(s));
  }
}

// 7. Anti-reduction: for every corpus membership claim that passes as member,
//    every configuration along the term's trace is also a member. Zero
//    violations.
void criterion_anti_reduction() {
  CheckConfig base = CheckConfig::defaults();
  int audited = 0;
  for (const Claim& c : load_claims(g_corpus)) {
    if (c.kind != "member" && c.kind != "universal") continue;
    for (const ClaimInstance& inst : expand_claim(c)) {
      ClaimResult r = run_claim_instance(inst, base);
      if (r.status != ClaimStatus::Pass) continue;
      auto mc = build_member_case(inst, base);
      if (!mc) continue;
      std::vector<State> states;
      if (c.kind == "member") states.push_back(mc->state);
      else
        for (State s = mc->cfg.range_lo; s <= mc->cfg.range_hi; ++s)
          states.push_back(s);
      for (State s : states) {
        if (!member(mc->formula, mc->rho, mc->term, s, mc->cfg).is(Tri::Yes))
          continue;  // claims expecting nonmember are not anti-reduction subjects
        Trace tr = reduce({mc->term, s}, 200);
        std::size_t limit = std::min<std::size_t>(tr.steps.size(), 50);
        for (std::size_t i = 0; i < limit; ++i) {
          CheckResult pred = member(mc->formula, mc->rho, tr.steps[i].after.term,
                                    tr.steps[i].after.state, mc->cfg);
          ACCEPT_CHECK(pred.is(Tri::Yes),
                       "anti-reduction violated for " + inst.id + " at step " +
                           std::to_string(i));
          ++audited;
        }
      }
    }
  }
  ACCEPT_CHECK(audited > 0, "no trace predecessors were audited");
}

// 8. Evidenced-frame reduction identities on 100 generated arguments each.
//    Zero failures.
void criterion_frames() {
  testgen::Rng rng(4242);
  std::vector<Term> evidence = {frame_id(), rt("\\x. (x, x)"), rt("\\x. p1 (x, 0)"),
                                rt("\\x. S x"), rt("\\x. $add x #1")};
  for (int i = 0; i < 100; ++i) {
    Term arg = testgen::numeric_term(rng, 3);
    Term arg2 = testgen::numeric_term(rng, 2);
    State s = rng.below(4);
    auto norm = [&](const Term& t) {
      Trace tr = reduce_quiet({t, s}, 100000);
      ACCEPT_CHECK(tr.outcome == Outcome::Normal, "frame argument did not normalize");
      return tr.final;
    };
    const Term& e1 = evidence[rng.below(evidence.size())];
    const Term& e2 = evidence[rng.below(evidence.size())];
    ACCEPT_CHECK(alpha_equal(norm(app(frame_id(), arg)).term, norm(arg).term),
                 "identity law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(frame_top(), arg)).term, norm(arg).term),
                 "top law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(frame_compose(e1, e2), arg)).term,
                             norm(app(e2, app(e1, arg))).term),
                 "composition law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(frame_fst(), app(frame_pair(e1, e2), arg))).term,
                             norm(app(e1, arg)).term),
                 "pairing/fst law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(frame_snd(), app(frame_pair(e1, e2), arg))).term,
                             norm(app(e2, arg)).term),
                 "pairing/snd law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(app(frame_lambda(e1), arg), arg2)).term,
                             norm(app(e1, pair(arg, arg2))).term),
                 "currying law failed");
    ACCEPT_CHECK(alpha_equal(norm(app(frame_eval(), pair(lam("y", var("y")), arg))).term,
                             norm(arg).term),
                 "evaluation law failed");
  }
}

// 9. Typing corpus: the 15 curated derivations are accepted; 30 deterministic
//    single-node mutations are rejected; the stateful second-order guard
//    rejects its test case. Exact.
void criterion_typing() {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(fs::path(g_corpus) / "derivations")) {
    std::string name = e.path().filename().string();
    if (e.path().extension() == ".ndt" && name.rfind("guard", 0) != 0)
      files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  ACCEPT_CHECK(files.size() == 15,
               "expected 15 curated derivations, found " + std::to_string(files.size()));

  int mutations_rejected = 0;
  for (const auto& path : files) {
    bool effect_free_only =
        fs::path(path).filename().string().rfind("ef-", 0) == 0;
    DerivationPtr d = parse_derivation(read_file(path));
    ACCEPT_CHECK(check_derivation(*d, TypingMode::EffectFree).ok,
                 path + " must be accepted in effect-free mode");
    if (!effect_free_only)
      ACCEPT_CHECK(check_derivation(*d, TypingMode::Stateful).ok,
                   path + " must be accepted in stateful mode");

    // mutation 1: swap the root rule name
    {
      Derivation m = *d;
      m.rule = (m.rule == "ax") ? "cong" : "ax";
      if (!check_derivation(m, TypingMode::EffectFree).ok) ++mutations_rejected;
      else throw Failure{"rule-swap mutation accepted for " + path};
    }
    // mutation 2: perturb the root conclusion formula
    {
      Derivation m = *d;
      m.conclusion.formula = f_and(m.conclusion.formula, m.conclusion.formula);
      if (!check_derivation(m, TypingMode::EffectFree).ok) ++mutations_rejected;
      else throw Failure{"formula perturbation accepted for " + path};
    }
  }
  ACCEPT_CHECK(mutations_rejected == 30, "expected 30 rejected mutations, got " +
                                             std::to_string(mutations_rejected));

  DerivationPtr guard = parse_derivation(
      read_file((fs::path(g_corpus) / "derivations" / "guard-external-subst.ndt").string()));
  ACCEPT_CHECK(check_derivation(*guard, TypingMode::EffectFree).ok,
               "guard case must be accepted in effect-free mode");
  TypingReport rep = check_derivation(*guard, TypingMode::Stateful);
  ACCEPT_CHECK(!rep.ok, "guard case must be rejected in stateful mode");
  bool found = false;
  for (const auto& diag : rep.diagnostics)
    found = found || diag.find("external substitution") != std::string::npos;
  ACCEPT_CHECK(found, "rejection must mention the external substitution");
}

// 10. State-sensitivity diagnostics: the projection term is a member of the
//     oracle implication in state 0 and a nonmember in state 1, with the
//     matching reductions; the next-odd term always lands in an odd state.
//     Exact.
void criterion_diagnostics() {
  CheckConfig cfg = CheckConfig::defaults();
  cfg.generators.push_back(rt("(0, #1)"));
  Valuation rho;
  rho.so.emplace("X", builtin_family("to_zero"));
  rho.so.emplace("Y", builtin_family("to_one"));
  Formula f = parse_formula("X /\\ Y -> X");
  Term t = rt("$slice_select");
  ACCEPT_CHECK(member(f, rho, t, 0, cfg).is(Tri::Yes), "membership must hold in state 0");
  ACCEPT_CHECK(member(f, rho, t, 1, cfg).is(Tri::No), "membership must fail in state 1");

  Trace p0 = reduce_quiet({app(t, pair(atom("l"), atom("r"))), 0});
  ACCEPT_CHECK(p0.outcome == Outcome::Normal && alpha_equal(p0.final.term, atom("l")),
               "state 0 must project the first component");
  Trace p1 = reduce_quiet({app(t, pair(atom("l"), atom("r"))), 1});
  ACCEPT_CHECK(p1.outcome == Outcome::Normal && alpha_equal(p1.final.term, atom("r")),
               "state 1 must project the second component");

  Term odd = rt("$odd_landing");
  for (State s = 0; s <= 8; ++s) {
    Trace tr = reduce_quiet({odd, s});
    std::uint64_t want = s % 2 == 1 ? s : s + 1;
    ACCEPT_CHECK(tr.outcome == Outcome::Normal && tr.final.state == want &&
                     tr.final.state % 2 == 1,
                 "next-odd landing failed at s=" + std::to_string(s));
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_corpus = argv[1];
  struct Entry {
    const char* name;
    std::function<void()> run;
  };
  const Entry criteria[] = {
      {"confluence counterexample (cbn #2@2, cbv #1@1)", criterion_confluence},
      {"storage operator grid", criterion_storage},
      {"diagonalization grid ends at max(n, s)", criterion_diagonalization},
      {"idealization extraction and relation checks", criterion_idealization},
      {"llpo end-to-end scenarios", criterion_llpo},
      {"glueing on 200 random internal triples", criterion_glueing},
      {"anti-reduction on corpus membership passes", criterion_anti_reduction},
      {"evidenced-frame laws on 100 generated arguments", criterion_frames},
      {"typing corpus and mutations", criterion_typing},
      {"state-sensitivity diagnostics", criterion_diagnostics},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run();
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      std::cout << "[PASS] criterion " << idx << ": " << c.name << " (" << ms
                << " ms)\n";
    } catch (const Failure& f) {
      ++failed;
      std::cout << "[FAIL] criterion " << idx << ": " << c.name << " -- " << f.detail
                << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "[FAIL] criterion " << idx << ": " << c.name << " -- exception: "
                << e.what() << "\n";
    }
  }
  std::cout << (failed == 0 ? "all criteria passed\n"
                            : std::to_string(failed) + " criteria failed\n");
  return failed == 0 ? 0 : 1;
}
