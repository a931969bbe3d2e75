#include "nsr/machine.hpp"

#include <algorithm>

namespace nsr {

const char* to_string(StuckReason r) {
  switch (r) {
    case StuckReason::ApplyNonFunction: return "apply-nonfunction";
    case StuckReason::ProjectNonPair: return "project-nonpair";
    case StuckReason::CaseNonInjection: return "case-noninjection";
    case StuckReason::SetNonNumeral: return "set-nonnumeral";
    case StuckReason::RecNonNumeral: return "rec-nonnumeral";
    case StuckReason::DaggerForced: return "dagger-forced";
    case StuckReason::FreeVariable: return "free-variable";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Normal: return "Normal";
    case Outcome::Stuck: return "Stuck";
    case Outcome::FuelExhausted: return "FuelExhausted";
  }
  return "?";
}

namespace {

struct StepOut {
  enum Kind { Progress, Answer, Stuck } kind;
  Term t;           // Progress: the reduct
  State s = 0;      // Progress: the new state
  const char* rule = nullptr;
  StuckReason reason = StuckReason::ApplyNonFunction;
};

StepOut progress(Term t, State s, const char* rule) {
  return {StepOut::Progress, std::move(t), s, rule, StuckReason::ApplyNonFunction};
}
StepOut answer() { return {StepOut::Answer, nullptr, 0, nullptr, StuckReason::ApplyNonFunction}; }
StepOut stuck(StuckReason r) {
  return {StepOut::Stuck, nullptr, 0, nullptr, r};
}

const TermNode* spine_head(const Term& t) {
  const TermNode* p = t.get();
  while (p->tag == Tag::App) p = p->a.get();
  return p;
}

// Call-by-name search for the unique redex.
StepOut step_cbn(const Term& t, State s) {
  switch (t->tag) {
    case Tag::Var:
      return stuck(StuckReason::FreeVariable);
    case Tag::Get:
      return progress(numeral(s), s, "get");
    case Tag::Zero:
    case Tag::Succ:
    case Tag::Rec:
    case Tag::Set:
    case Tag::Dagger:
    case Tag::Atom:
    case Tag::Abs:
    case Tag::Pair:
    case Tag::Inl:
    case Tag::Inr:
      return answer();  // pairs and injections have no forcing context
    case Tag::Proj1:
    case Tag::Proj2: {
      StepOut r = step_cbn(t->a, s);
      if (r.kind == StepOut::Progress) {
        Term w = (t->tag == Tag::Proj1) ? proj1(r.t) : proj2(r.t);
        return progress(w, r.s, r.rule);
      }
      if (r.kind == StepOut::Stuck) return r;
      if (t->a->tag == Tag::Pair)
        return progress(t->tag == Tag::Proj1 ? t->a->a : t->a->b, s,
                        t->tag == Tag::Proj1 ? "proj1" : "proj2");
      return stuck(StuckReason::ProjectNonPair);
    }
    case Tag::Case: {
      StepOut r = step_cbn(t->a, s);
      if (r.kind == StepOut::Progress)
        return progress(case_of(r.t, t->name, t->b, t->name2, t->c), r.s, r.rule);
      if (r.kind == StepOut::Stuck) return r;
      if (t->a->tag == Tag::Inl)
        return progress(substitute(t->b, t->name, t->a->a), s, "case-inl");
      if (t->a->tag == Tag::Inr)
        return progress(substitute(t->c, t->name2, t->a->a), s, "case-inr");
      return stuck(StuckReason::CaseNonInjection);
    }
    case Tag::App:
      break;
  }

  const Term& f = t->a;
  const Term& u = t->b;

  // S [.]
  if (f->tag == Tag::Succ) {
    if (as_numeral(u)) return answer();
    StepOut r = step_cbn(u, s);
    if (r.kind == StepOut::Progress) return progress(app(succ(), r.t), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    return answer();  // S applied to a non-numeral answer, e.g. S (\x.x)
  }

  // set [.] u  (t = set k u)
  if (f->tag == Tag::App && f->a->tag == Tag::Set) {
    const Term& k = f->b;
    if (auto n = as_numeral(k)) return progress(u, std::max<State>(*n, s), "set");
    StepOut r = step_cbn(k, s);
    if (r.kind == StepOut::Progress)
      return progress(app(app(set(), r.t), u), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    return stuck(StuckReason::SetNonNumeral);
  }

  // rec u0 u1 [.]  (t = rec u0 u1 n)
  if (f->tag == Tag::App && f->a->tag == Tag::App && f->a->a->tag == Tag::Rec) {
    const Term& u0 = f->a->b;
    const Term& u1 = f->b;
    const Term& n = u;
    StepOut r = step_cbn(n, s);
    if (r.kind == StepOut::Progress)
      return progress(app(rec(), u0, u1, r.t), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    if (n->tag == Tag::Zero) return progress(u0, s, "rec-zero");
    if (n->tag == Tag::App && n->a->tag == Tag::Succ) {
      const Term& m = n->b;
      return progress(app(app(u1, m), app(rec(), u0, u1, m)), s, "rec-succ");
    }
    return stuck(StuckReason::RecNonNumeral);
  }

  // [.] u
  StepOut r = step_cbn(f, s);
  if (r.kind == StepOut::Progress) return progress(app(r.t, u), r.s, r.rule);
  if (r.kind == StepOut::Stuck) return r;
  if (f->tag == Tag::Abs)
    return progress(substitute(f->a, f->name, u), s, "beta");
  if (f->tag == Tag::Dagger) return stuck(StuckReason::DaggerForced);
  switch (spine_head(t)->tag) {
    case Tag::Atom:
      return answer();  // probe application: an observable answer
    case Tag::Rec:
    case Tag::Set:
      return answer();  // partial application awaiting arguments
    default:
      return stuck(StuckReason::ApplyNonFunction);
  }
}

// Left-to-right call-by-value. Pairs and injections evaluate their
// components here; beta fires once the argument is fully reduced.
StepOut step_v(const Term& t, State s) {
  switch (t->tag) {
    case Tag::Var:
      return stuck(StuckReason::FreeVariable);
    case Tag::Get:
      return progress(numeral(s), s, "get");
    case Tag::Zero:
    case Tag::Succ:
    case Tag::Rec:
    case Tag::Set:
    case Tag::Dagger:
    case Tag::Atom:
    case Tag::Abs:
      return answer();
    case Tag::Pair: {
      StepOut r = step_v(t->a, s);
      if (r.kind == StepOut::Progress) return progress(pair(r.t, t->b), r.s, r.rule);
      if (r.kind == StepOut::Stuck) return r;
      r = step_v(t->b, s);
      if (r.kind == StepOut::Progress) return progress(pair(t->a, r.t), r.s, r.rule);
      if (r.kind == StepOut::Stuck) return r;
      return answer();
    }
    case Tag::Inl:
    case Tag::Inr: {
      StepOut r = step_v(t->a, s);
      if (r.kind == StepOut::Progress) {
        Term w = (t->tag == Tag::Inl) ? inl(r.t) : inr(r.t);
        return progress(w, r.s, r.rule);
      }
      if (r.kind == StepOut::Stuck) return r;
      return answer();
    }
    case Tag::Proj1:
    case Tag::Proj2: {
      StepOut r = step_v(t->a, s);
      if (r.kind == StepOut::Progress) {
        Term w = (t->tag == Tag::Proj1) ? proj1(r.t) : proj2(r.t);
        return progress(w, r.s, r.rule);
      }
      if (r.kind == StepOut::Stuck) return r;
      if (t->a->tag == Tag::Pair)
        return progress(t->tag == Tag::Proj1 ? t->a->a : t->a->b, s,
                        t->tag == Tag::Proj1 ? "proj1" : "proj2");
      return stuck(StuckReason::ProjectNonPair);
    }
    case Tag::Case: {
      StepOut r = step_v(t->a, s);
      if (r.kind == StepOut::Progress)
        return progress(case_of(r.t, t->name, t->b, t->name2, t->c), r.s, r.rule);
      if (r.kind == StepOut::Stuck) return r;
      if (t->a->tag == Tag::Inl)
        return progress(substitute(t->b, t->name, t->a->a), s, "case-inl");
      if (t->a->tag == Tag::Inr)
        return progress(substitute(t->c, t->name2, t->a->a), s, "case-inr");
      return stuck(StuckReason::CaseNonInjection);
    }
    case Tag::App:
      break;
  }

  const Term& f = t->a;
  const Term& u = t->b;

  if (f->tag == Tag::Succ) {
    if (as_numeral(u)) return answer();
    StepOut r = step_v(u, s);
    if (r.kind == StepOut::Progress) return progress(app(succ(), r.t), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    return answer();
  }

  // set fires once its first argument is a numeral; the continuation is
  // taken as-is (the state rule is unchanged across strategies).
  if (f->tag == Tag::App && f->a->tag == Tag::Set) {
    const Term& k = f->b;
    if (auto n = as_numeral(k)) return progress(u, std::max<State>(*n, s), "set");
    StepOut r = step_v(k, s);
    if (r.kind == StepOut::Progress)
      return progress(app(app(set(), r.t), u), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    return stuck(StuckReason::SetNonNumeral);
  }

  if (f->tag == Tag::App && f->a->tag == Tag::App && f->a->a->tag == Tag::Rec) {
    const Term& u0 = f->a->b;
    const Term& u1 = f->b;
    const Term& n = u;
    StepOut r0 = step_v(u0, s);
    if (r0.kind == StepOut::Progress)
      return progress(app(rec(), r0.t, u1, n), r0.s, r0.rule);
    if (r0.kind == StepOut::Stuck) return r0;
    StepOut r1 = step_v(u1, s);
    if (r1.kind == StepOut::Progress)
      return progress(app(rec(), u0, r1.t, n), r1.s, r1.rule);
    if (r1.kind == StepOut::Stuck) return r1;
    StepOut r = step_v(n, s);
    if (r.kind == StepOut::Progress)
      return progress(app(rec(), u0, u1, r.t), r.s, r.rule);
    if (r.kind == StepOut::Stuck) return r;
    if (n->tag == Tag::Zero) return progress(u0, s, "rec-zero");
    if (n->tag == Tag::App && n->a->tag == Tag::Succ) {
      const Term& m = n->b;
      return progress(app(app(u1, m), app(rec(), u0, u1, m)), s, "rec-succ");
    }
    return stuck(StuckReason::RecNonNumeral);
  }

  StepOut rf = step_v(f, s);
  if (rf.kind == StepOut::Progress) return progress(app(rf.t, u), rf.s, rf.rule);
  if (rf.kind == StepOut::Stuck) return rf;
  StepOut ra = step_v(u, s);
  if (ra.kind == StepOut::Progress) return progress(app(f, ra.t), ra.s, ra.rule);
  if (ra.kind == StepOut::Stuck) return ra;
  if (f->tag == Tag::Abs)
    return progress(substitute(f->a, f->name, u), s, "beta");
  if (f->tag == Tag::Dagger) return stuck(StuckReason::DaggerForced);
  switch (spine_head(t)->tag) {
    case Tag::Atom:
    case Tag::Rec:
    case Tag::Set:
      return answer();
    default:
      return stuck(StuckReason::ApplyNonFunction);
  }
}

Trace run(const Config& start, std::uint64_t fuel, bool cbv, bool record) {
  Trace tr;
  tr.start = start;
  Config cur = start;
  for (std::uint64_t i = 0; i < fuel; ++i) {
    StepOut r = cbv ? step_v(cur.term, cur.state) : step_cbn(cur.term, cur.state);
    if (r.kind == StepOut::Answer) {
      tr.outcome = Outcome::Normal;
      tr.final = cur;
      return tr;
    }
    if (r.kind == StepOut::Stuck) {
      tr.outcome = Outcome::Stuck;
      tr.final = cur;
      tr.reason = r.reason;
      return tr;
    }
    cur = Config{r.t, r.s};
    if (record) tr.steps.push_back({cur, r.rule});
  }
  tr.outcome = Outcome::FuelExhausted;
  tr.final = cur;
  return tr;
}

}  // namespace

std::optional<std::pair<Config, const char*>> step(const Config& c) {
  StepOut r = step_cbn(c.term, c.state);
  if (r.kind != StepOut::Progress) return std::nullopt;
  return std::make_pair(Config{r.t, r.s}, r.rule);
}

std::optional<std::pair<Config, const char*>> step_cbv(const Config& c) {
  StepOut r = step_v(c.term, c.state);
  if (r.kind != StepOut::Progress) return std::nullopt;
  return std::make_pair(Config{r.t, r.s}, r.rule);
}

Trace reduce(const Config& c, std::uint64_t fuel) { return run(c, fuel, false, true); }
Trace reduce_cbv(const Config& c, std::uint64_t fuel) { return run(c, fuel, true, true); }
Trace reduce_quiet(const Config& c, std::uint64_t fuel) { return run(c, fuel, false, false); }

std::string Trace::to_text() const {
  std::string out;
  for (const auto& e : steps) {
    out += std::to_string(e.after.state);
    out += " | ";
    out += e.rule;
    out += " | ";
    out += print_term(e.after.term);
    out += '\n';
  }
  out += "RESULT ";
  out += to_string(outcome);
  if (outcome == Outcome::Stuck && reason) {
    out += ' ';
    out += nsr::to_string(*reason);
  }
  out += ' ';
  out += std::to_string(final.state);
  out += ' ';
  out += print_term(final.term);
  out += '\n';
  return out;
}

}  // namespace nsr
