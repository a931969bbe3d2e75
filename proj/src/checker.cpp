#include "nsr/checker.hpp"

#include <algorithm>
#include <cstdlib>

namespace nsr {

namespace {

CheckResult res(Tri v, bool bounded = false, std::string note = "") {
  return {v, bounded, std::move(note)};
}

CheckResult conj(const CheckResult& a, const CheckResult& b) {
  CheckResult out;
  out.generator_bounded = a.generator_bounded || b.generator_bounded;
  if (a.is(Tri::No) || b.is(Tri::No)) out.verdict = Tri::No;
  else if (a.is(Tri::Unknown) || b.is(Tri::Unknown)) out.verdict = Tri::Unknown;
  else out.verdict = Tri::Yes;
  out.note = !a.note.empty() ? a.note : b.note;
  return out;
}

// Visit (t;s) and every configuration its trace reaches; pred is read at each
// visited state. Member as soon as pred holds somewhere reachable
// (anti-reduction); nonmember when the trace ends without it; unknown on fuel.
Tri along_trace(const std::function<bool(const Term&, State)>& pred, const Term& t,
                State s, std::uint64_t fuel) {
  Config cur{t, s};
  for (std::uint64_t i = 0; i <= fuel; ++i) {
    if (pred(cur.term, cur.state)) return Tri::Yes;
    auto nx = step(cur);
    if (!nx) return Tri::No;
    cur = nx->first;
  }
  return Tri::Unknown;
}

bool natp_pattern(const Formula& f, FOExpr& e_out) {
  // forall2 X:0. (Nat(e) |-> X) -> X
  if (f->tag != FTag::ForallSO || f->arity != 0) return false;
  const Formula& body = f->a;
  if (body->tag != FTag::Arrow) return false;
  const Formula& lhs = body->a;
  const Formula& rhs = body->b;
  if (rhs->tag != FTag::PredVar || rhs->name != f->name || !rhs->exprs.empty())
    return false;
  if (lhs->tag != FTag::NatRestr) return false;
  if (lhs->a->tag != FTag::PredVar || lhs->a->name != f->name || !lhs->a->exprs.empty())
    return false;
  e_out = lhs->exprs[0];
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in oracles.

SemPredicate builtin_predicate(const std::string& name) {
  if (name == "full")
    return {"full", [](const Term&, State, const CheckConfig&) { return Tri::Yes; }};
  if (name == "empty")
    return {"empty", [](const Term&, State, const CheckConfig&) { return Tri::No; }};
  if (name == "to_zero" || name == "to_one") {
    std::uint64_t target = name == "to_one" ? 1 : 0;
    return {name, [target](const Term& t, State s, const CheckConfig& cfg) {
              Trace tr = reduce_quiet({t, s}, cfg.fuel);
              if (tr.outcome == Outcome::FuelExhausted) return Tri::Unknown;
              if (tr.outcome != Outcome::Normal) return Tri::No;
              auto n = as_numeral(tr.final.term);
              return (n && *n == target) ? Tri::Yes : Tri::No;
            }};
  }
  throw FormulaError("unknown built-in predicate " + name);
}

PredFamily builtin_family(const std::string& name) {
  if (name == "full" || name == "empty" || name == "to_zero" || name == "to_one") {
    SemPredicate p = builtin_predicate(name);
    return {name, 0, [p](const std::vector<std::uint64_t>&) { return p; }};
  }
  if (name == "to_numeral") {
    return {"to_numeral", 1, [](const std::vector<std::uint64_t>& args) {
              std::uint64_t n = args[0];
              SemPredicate p;
              p.describe = "reduces to #" + std::to_string(n);
              p.decide = [n](const Term& t, State s, const CheckConfig& cfg) {
                Trace tr = reduce_quiet({t, s}, cfg.fuel);
                if (tr.outcome == Outcome::FuelExhausted) return Tri::Unknown;
                if (tr.outcome != Outcome::Normal) return Tri::No;
                auto m = as_numeral(tr.final.term);
                return (m && *m == n) ? Tri::Yes : Tri::No;
              };
              return p;
            }};
  }
  throw FormulaError("unknown built-in family " + name);
}

bool has_builtin_family(const std::string& name) {
  return name == "full" || name == "empty" || name == "to_zero" ||
         name == "to_one" || name == "to_numeral";
}

CheckConfig CheckConfig::defaults() {
  CheckConfig cfg;
  const char* env = std::getenv("NSR_FUEL");
  if (env && *env) cfg.fuel = std::strtoull(env, nullptr, 10);
  for (std::uint64_t n = 0; n <= 8; ++n)
    cfg.individuals.push_back(Individual::constant(n));
  cfg.individuals.push_back(Individual::diagonal());
  cfg.individuals.push_back(Individual::modk(2));
  cfg.so_pool[0] = {builtin_family("to_zero"), builtin_family("to_one"),
                    builtin_family("full")};
  cfg.so_pool[1] = {builtin_family("to_numeral")};
  cfg.generators = {dagger(), lam("x", var("x")), zero(),
                    lam("x", lam("y", var("x"))),
                    lam("x", lam("y", pair(var("x"), var("y"))))};
  return cfg;
}

// ---------------------------------------------------------------------------
// Membership.

CheckResult member(const Formula& a, const Valuation& rho, const Term& t, State s,
                   const CheckConfig& cfg) {
  switch (a->tag) {
    case FTag::St: {
      Individual f = expr_individual(a->exprs[0], rho);
      Tri st = f.is_standard(cfg.range_lo, std::max<State>(cfg.range_hi, kProbeHi));
      return res(st, false, st == Tri::Unknown ? "standardness unknown" : "");
    }

    case FTag::Rel: {
      const std::string rel = a->name;
      FOExpr e1 = a->exprs[0], e2 = a->exprs[1];
      Tri v = along_trace(
          [&](const Term&, State st) {
            return eval_rel(rel, eval_expr(e1, rho, st), eval_expr(e2, rho, st));
          },
          t, s, cfg.fuel);
      return res(v);
    }

    case FTag::NatAtom: {
      FOExpr e = a->exprs[0];
      Tri v = along_trace(
          [&](const Term& tm, State st) {
            auto n = as_numeral(tm);
            return n && *n == eval_expr(e, rho, st);
          },
          t, s, cfg.fuel);
      return res(v);
    }

    case FTag::PredVar: {
      auto it = rho.so.find(a->name);
      if (it == rho.so.end())
        return res(Tri::Unknown, false, "unbound predicate variable " + a->name);
      const PredFamily& F = it->second;
      if (static_cast<int>(a->exprs.size()) != F.arity)
        throw FormulaError("arity mismatch applying " + a->name);
      // Pointwise application, closed under anti-reduction: re-read at each
      // state the trace visits (argument values can drift with the state).
      std::vector<FOExpr> args = a->exprs;
      Config cur{t, s};
      Tri out = Tri::No;
      State last_state = s;
      bool first = true;
      for (std::uint64_t i = 0; i <= cfg.fuel; ++i) {
        if (first || cur.state != last_state) {
          std::vector<std::uint64_t> vals;
          for (const auto& e : args) vals.push_back(eval_expr(e, rho, cur.state));
          Tri v = F.at(vals).decide(cur.term, cur.state, cfg);
          if (v == Tri::Yes) return res(Tri::Yes);
          if (v == Tri::Unknown) out = Tri::Unknown;
          first = false;
          last_state = cur.state;
        }
        auto nx = step(cur);
        if (!nx) return res(out);
        cur = nx->first;
      }
      return res(Tri::Unknown);
    }

    case FTag::NatRestr: {
      std::uint64_t n = eval_expr(a->exprs[0], rho, s);
      return member(a->a, rho, app(t, numeral(n)), s, cfg);
    }

    case FTag::MapsTo:
      return res(Tri::Unknown, false,
                 "general value restriction outside the Nat fragment is not checked");

    case FTag::Arrow: {
      bool saw_unknown = false;
      for (const Term& g : cfg.generators) {
        CheckResult hyp = member(a->a, rho, g, s, cfg);
        if (hyp.is(Tri::No)) continue;
        if (hyp.is(Tri::Unknown)) {
          saw_unknown = true;
          continue;
        }
        CheckResult body = member(a->b, rho, app(t, g), s, cfg);
        if (body.is(Tri::No))
          return res(Tri::No, true, "refuted by generator " + print_term(g));
        if (body.is(Tri::Unknown)) saw_unknown = true;
      }
      if (saw_unknown) return res(Tri::Unknown, true);
      return res(Tri::Yes, true);
    }

    case FTag::And:
      return conj(member(a->a, rho, proj1(t), s, cfg),
                  member(a->b, rho, proj2(t), s, cfg));

    case FTag::Or: {
      // Observation through the elimination form with fresh inert tags.
      Term probe = case_of(t, "v", app(atom("TAG_L"), var("v")), "w",
                           app(atom("TAG_R"), var("w")));
      Trace tr = reduce_quiet({probe, s}, cfg.fuel);
      if (tr.outcome == Outcome::FuelExhausted) return res(Tri::Unknown);
      if (tr.outcome != Outcome::Normal)
        return res(Tri::No, false, "case observation stuck");
      const Term& nf = tr.final.term;
      if (nf->tag == Tag::App && nf->a->tag == Tag::Atom) {
        if (nf->a->name == "TAG_L") return member(a->a, rho, nf->b, tr.final.state, cfg);
        if (nf->a->name == "TAG_R") return member(a->b, rho, nf->b, tr.final.state, cfg);
      }
      return res(Tri::No, false, "case observation not tagged");
    }

    case FTag::ForallFO: {
      CheckResult out = res(Tri::Yes);
      for (const auto& f : cfg.individuals) {
        CheckResult r = member(a->a, rho.with_fo(a->name, f), t, s, cfg);
        if (r.is(Tri::No))
          return res(Tri::No, r.generator_bounded, "fails at " + f.describe());
        out = conj(out, r);
      }
      return out;
    }

    case FTag::ExistsFO: {
      bool unknown = false, bounded = false;
      for (const auto& f : cfg.individuals) {
        CheckResult r = member(a->a, rho.with_fo(a->name, f), t, s, cfg);
        if (r.is(Tri::Yes)) return res(Tri::Yes, r.generator_bounded, "at " + f.describe());
        if (r.is(Tri::Unknown)) unknown = true;
        bounded = bounded || r.generator_bounded;
      }
      return res(unknown ? Tri::Unknown : Tri::No, bounded);
    }

    case FTag::ForallSO: {
      FOExpr natp_e;
      if (natp_pattern(a, natp_e)) {
        // Observation: t (\x.x) forces the numeral of e in the same state.
        std::uint64_t n = eval_expr(natp_e, rho, s);
        Trace tr = reduce_quiet({app(t, lam("x", var("x"))), s}, cfg.fuel);
        if (tr.outcome == Outcome::FuelExhausted) return res(Tri::Unknown);
        if (tr.outcome != Outcome::Normal)
          return res(Tri::No, false, "identity observation stuck");
        auto m = as_numeral(tr.final.term);
        if (!m) return res(Tri::No, false, "identity observation not a numeral");
        if (tr.final.state != s) return res(Tri::No, false, "state changed");
        return res(*m == n ? Tri::Yes : Tri::No);
      }
      auto it = cfg.so_pool.find(a->arity);
      if (it == cfg.so_pool.end() || it->second.empty())
        return res(Tri::Unknown, false,
                   "no test predicates of arity " + std::to_string(a->arity));
      CheckResult out = res(Tri::Yes);
      for (const auto& F : it->second) {
        CheckResult r = member(a->a, rho.with_so(a->name, F), t, s, cfg);
        if (r.is(Tri::No)) return res(Tri::No, r.generator_bounded, "fails at " + F.name);
        out = conj(out, r);
      }
      return out;
    }

    case FTag::ExistsSO: {
      auto it = cfg.so_pool.find(a->arity);
      if (it == cfg.so_pool.end() || it->second.empty())
        return res(Tri::Unknown, false,
                   "no test predicates of arity " + std::to_string(a->arity));
      bool unknown = false, bounded = false;
      for (const auto& F : it->second) {
        CheckResult r = member(a->a, rho.with_so(a->name, F), t, s, cfg);
        if (r.is(Tri::Yes)) return res(Tri::Yes, r.generator_bounded, "at " + F.name);
        if (r.is(Tri::Unknown)) unknown = true;
        bounded = bounded || r.generator_bounded;
      }
      return res(unknown ? Tri::Unknown : Tri::No, bounded);
    }
  }
  return res(Tri::Unknown);
}

UniversalReport universal(const Formula& a, const Valuation& rho, const Term& t,
                          const CheckConfig& cfg) {
  if (cfg.range_lo > cfg.range_hi)
    throw FormulaError("universal check needs a nonempty state range");
  UniversalReport rep;
  rep.aggregate = res(Tri::Yes);
  for (State s = cfg.range_lo; s <= cfg.range_hi; ++s) {
    CheckResult r = member(a, rho, t, s, cfg);
    rep.per_state.emplace_back(s, r);
    if (r.is(Tri::No)) {
      rep.aggregate.verdict = Tri::No;
      if (rep.aggregate.note.empty())
        rep.aggregate.note = "fails at state " + std::to_string(s);
    } else if (r.is(Tri::Unknown) && !rep.aggregate.is(Tri::No)) {
      rep.aggregate.verdict = Tri::Unknown;
    }
    rep.aggregate.generator_bounded |= r.generator_bounded;
  }
  return rep;
}

const char* to_string(ExtractError::Kind k) {
  switch (k) {
    case ExtractError::NonPair: return "non-pair";
    case ExtractError::StateChanged: return "state-changed";
    case ExtractError::NonNumeralWitness: return "non-numeral-witness";
    case ExtractError::Fuel: return "fuel";
    case ExtractError::Stuck: return "stuck";
  }
  return "?";
}

std::optional<Extraction> extract_witness(const Term& t, State s, const CheckConfig& cfg,
                                          ExtractError* err) {
  auto fail = [&](ExtractError::Kind k, std::string d) -> std::optional<Extraction> {
    if (err) *err = {k, std::move(d)};
    return std::nullopt;
  };
  Term probe = lam("x", lam("y", pair(var("x"), var("y"))));
  Trace tr = reduce_quiet({app(t, probe), s}, cfg.fuel);
  if (tr.outcome == Outcome::FuelExhausted) return fail(ExtractError::Fuel, "");
  if (tr.outcome == Outcome::Stuck)
    return fail(ExtractError::Stuck, to_string(*tr.reason));
  if (tr.final.term->tag != Tag::Pair)
    return fail(ExtractError::NonPair, print_term(tr.final.term));
  if (tr.final.state != s)
    return fail(ExtractError::StateChanged,
                "ended in state " + std::to_string(tr.final.state));
  // Force the witness component; it must be a numeral in the same state.
  Trace tw = reduce_quiet({tr.final.term->a, s}, cfg.fuel);
  if (tw.outcome == Outcome::FuelExhausted) return fail(ExtractError::Fuel, "witness");
  if (tw.outcome == Outcome::Stuck)
    return fail(ExtractError::NonNumeralWitness, to_string(*tw.reason));
  auto n = as_numeral(tw.final.term);
  if (!n) return fail(ExtractError::NonNumeralWitness, print_term(tw.final.term));
  if (tw.final.state != s)
    return fail(ExtractError::StateChanged, "witness forcing changed the state");
  return Extraction{*n, tr.final.term->b, tr.final.state};
}

GlueingReport glueing_check(const Formula& a, const Valuation& rho, const Term& t,
                            State s, const CheckConfig& cfg) {
  GlueingReport rep;
  rep.lhs = member(a, rho, t, s, cfg);
  Formula trunc = truncate(a, s, rho);
  rep.rhs = member(trunc, rho, t, s, cfg);
  if (rep.lhs.is(Tri::Unknown) || rep.rhs.is(Tri::Unknown)) {
    rep.vacuous = true;
    rep.agree = true;
    return rep;
  }
  rep.agree = rep.lhs.verdict == rep.rhs.verdict;
  return rep;
}

}  // namespace nsr
