#include "nsr/typing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nsr {

namespace {

bool ctx_equal(const std::vector<std::pair<std::string, Formula>>& a,
               const std::vector<std::pair<std::string, Formula>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first) return false;
    if (!formula_alpha_equal(a[i].second, b[i].second)) return false;
  }
  return true;
}

bool feq(const Formula& a, const Formula& b) { return formula_alpha_equal(a, b); }

struct Checker {
  TypingMode mode;
  TypingReport report;

  void fail(const std::string& path, const std::string& msg) {
    report.ok = false;
    report.diagnostics.push_back(path + ": " + msg);
  }

  void check(const Derivation& d, const std::string& path) {
    const Judgment& j = d.conclusion;
    {
      std::set<std::string> names;
      for (const auto& e : j.ctx)
        if (!names.insert(e.first).second) {
          fail(path, "duplicate context variable " + e.first);
          return;
        }
    }
    auto need_premises = [&](std::size_t n) {
      if (d.premises.size() != n) {
        fail(path, d.rule + " expects " + std::to_string(n) + " premise(s), has " +
                       std::to_string(d.premises.size()));
        return false;
      }
      return true;
    };
    auto same_ctx = [&](const Derivation& p, const char* which) {
      if (!ctx_equal(p.conclusion.ctx, j.ctx)) {
        fail(path, std::string("context mismatch in ") + which + " premise");
        return false;
      }
      return true;
    };

    const std::string& r = d.rule;

    if (r == "ax") {
      if (!need_premises(0)) return;
      if (j.subject->tag != Tag::Var) return fail(path, "ax subject must be a variable");
      for (const auto& e : j.ctx)
        if (e.first == j.subject->name) {
          if (!feq(e.second, j.formula))
            fail(path, "ax formula differs from the context entry");
          return;
        }
      return fail(path, "ax variable not in context");
    }

    if (r == "zero" || r == "succ" || r == "rec_nat") {
      if (!need_premises(0)) return;
      if (mode == TypingMode::Stateful)
        return fail(path, r + " axiom is not available in stateful mode");
      if (r == "zero") {
        if (j.subject->tag != Tag::Zero) return fail(path, "zero subject must be 0");
        if (!feq(j.formula, f_nat(ezero()))) fail(path, "zero types Nat(0)");
        return;
      }
      if (r == "succ") {
        if (j.subject->tag != Tag::Succ) return fail(path, "succ subject must be S");
        Formula want = f_fa_n("x", f_nat(esucc(evar("x"))));
        if (!feq(j.formula, want)) fail(path, "succ types fa_n x. Nat(S(x))");
        return;
      }
      if (j.subject->tag != Tag::Rec) return fail(path, "rec subject must be rec");
      Formula z0 = f_predvar("Z", {ezero()});
      Formula step = f_fa_n(
          "y", f_arrow(f_predvar("Z", {evar("y")}), f_predvar("Z", {esucc(evar("y"))})));
      Formula want = f_forall2(
          "Z", 1, f_arrow(z0, f_arrow(step, f_fa_n("x", f_predvar("Z", {evar("x")})))));
      if (!feq(j.formula, want)) fail(path, "rec axiom formula mismatch");
      return;
    }

    if (r == "arrow_i") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (j.subject->tag != Tag::Abs) return fail(path, "arrow_i subject must be a lambda");
      if (j.formula->tag != FTag::Arrow) return fail(path, "arrow_i conclusion must be an arrow");
      const std::string& x = j.subject->name;
      for (const auto& e : j.ctx)
        if (e.first == x) return fail(path, "binder shadows a context variable");
      auto want_ctx = j.ctx;
      want_ctx.emplace_back(x, j.formula->a);
      if (!ctx_equal(p.conclusion.ctx, want_ctx))
        return fail(path, "premise context must extend with the binder");
      if (!alpha_equal(p.conclusion.subject, j.subject->a))
        return fail(path, "premise subject must be the lambda body");
      if (!feq(p.conclusion.formula, j.formula->b))
        return fail(path, "premise formula must be the codomain");
      return;
    }

    if (r == "arrow_e") {
      if (!need_premises(2)) return;
      const Derivation& pf = *d.premises[0];
      const Derivation& pa = *d.premises[1];
      if (!same_ctx(pf, "first") || !same_ctx(pa, "second")) return;
      if (j.subject->tag != Tag::App) return fail(path, "arrow_e subject must be an application");
      if (!alpha_equal(pf.conclusion.subject, j.subject->a) ||
          !alpha_equal(pa.conclusion.subject, j.subject->b))
        return fail(path, "premise subjects must match the application parts");
      if (pf.conclusion.formula->tag != FTag::Arrow)
        return fail(path, "first premise must be an arrow");
      if (!feq(pf.conclusion.formula->a, pa.conclusion.formula))
        return fail(path, "argument formula mismatch");
      if (!feq(pf.conclusion.formula->b, j.formula))
        return fail(path, "codomain mismatch");
      return;
    }

    if (r == "and_i") {
      if (!need_premises(2)) return;
      if (j.subject->tag != Tag::Pair) return fail(path, "and_i subject must be a pair");
      if (j.formula->tag != FTag::And) return fail(path, "and_i conclusion must be a conjunction");
      const Derivation& p1 = *d.premises[0];
      const Derivation& p2 = *d.premises[1];
      if (!same_ctx(p1, "first") || !same_ctx(p2, "second")) return;
      if (!alpha_equal(p1.conclusion.subject, j.subject->a) ||
          !alpha_equal(p2.conclusion.subject, j.subject->b))
        return fail(path, "premise subjects must match the pair components");
      if (!feq(p1.conclusion.formula, j.formula->a) ||
          !feq(p2.conclusion.formula, j.formula->b))
        return fail(path, "premise formulas must match the conjuncts");
      return;
    }

    if (r == "and_e1" || r == "and_e2") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      bool first = r == "and_e1";
      Tag want = first ? Tag::Proj1 : Tag::Proj2;
      if (j.subject->tag != want) return fail(path, r + " subject must be a projection");
      if (!alpha_equal(p.conclusion.subject, j.subject->a))
        return fail(path, "premise subject must be the projected term");
      if (p.conclusion.formula->tag != FTag::And)
        return fail(path, "premise must be a conjunction");
      const Formula& got = first ? p.conclusion.formula->a : p.conclusion.formula->b;
      if (!feq(got, j.formula)) return fail(path, "projected formula mismatch");
      return;
    }

    if (r == "or_i1" || r == "or_i2") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      bool first = r == "or_i1";
      Tag want = first ? Tag::Inl : Tag::Inr;
      if (j.subject->tag != want) return fail(path, r + " subject must be an injection");
      if (j.formula->tag != FTag::Or) return fail(path, "conclusion must be a disjunction");
      if (!alpha_equal(p.conclusion.subject, j.subject->a))
        return fail(path, "premise subject must be the injected term");
      if (!feq(p.conclusion.formula, first ? j.formula->a : j.formula->b))
        return fail(path, "premise formula must match the disjunct");
      return;
    }

    if (r == "or_e") {
      if (!need_premises(3)) return;
      const Derivation& ps = *d.premises[0];
      const Derivation& pl = *d.premises[1];
      const Derivation& pr = *d.premises[2];
      if (j.subject->tag != Tag::Case) return fail(path, "or_e subject must be a case");
      if (!same_ctx(ps, "scrutinee")) return;
      if (ps.conclusion.formula->tag != FTag::Or)
        return fail(path, "scrutinee premise must be a disjunction");
      if (!alpha_equal(ps.conclusion.subject, j.subject->a))
        return fail(path, "scrutinee subject mismatch");
      auto branch = [&](const Derivation& p, const std::string& x, const Term& body,
                        const Formula& hyp, const char* which) {
        auto want_ctx = j.ctx;
        want_ctx.emplace_back(x, hyp);
        if (!ctx_equal(p.conclusion.ctx, want_ctx)) {
          fail(path, std::string(which) + " branch context mismatch");
          return;
        }
        if (!alpha_equal(p.conclusion.subject, body))
          fail(path, std::string(which) + " branch subject mismatch");
        if (!feq(p.conclusion.formula, j.formula))
          fail(path, std::string(which) + " branch formula mismatch");
      };
      branch(pl, j.subject->name, j.subject->b, ps.conclusion.formula->a, "left");
      branch(pr, j.subject->name2, j.subject->c, ps.conclusion.formula->b, "right");
      return;
    }

    if (r == "exists1_i" || r == "forall1_e") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      if (!alpha_equal(p.conclusion.subject, j.subject))
        return fail(path, "subject must be unchanged");
      if (!d.witness_expr) return fail(path, r + " needs witness-expr");
      if (r == "exists1_i") {
        if (j.formula->tag != FTag::ExistsFO)
          return fail(path, "conclusion must be a first-order existential");
        Formula inst = formula_subst_fo(j.formula->a, j.formula->name, *d.witness_expr);
        if (!feq(p.conclusion.formula, inst))
          return fail(path, "premise is not the witness instance");
      } else {
        if (p.conclusion.formula->tag != FTag::ForallFO)
          return fail(path, "premise must be a first-order universal");
        Formula inst = formula_subst_fo(p.conclusion.formula->a,
                                        p.conclusion.formula->name, *d.witness_expr);
        if (!feq(j.formula, inst))
          return fail(path, "conclusion is not the witness instance");
      }
      return;
    }

    if (r == "forall1_i" || r == "forall2_i") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      if (!alpha_equal(p.conclusion.subject, j.subject))
        return fail(path, "subject must be unchanged");
      bool fo = r == "forall1_i";
      if (fo && j.formula->tag != FTag::ForallFO)
        return fail(path, "conclusion must be a first-order universal");
      if (!fo && j.formula->tag != FTag::ForallSO)
        return fail(path, "conclusion must be a second-order universal");
      if (!feq(p.conclusion.formula, j.formula->a))
        return fail(path, "premise must be the universal body");
      // eigenvariable condition
      for (const auto& e : j.ctx) {
        auto fvs = fo ? formula_free_fo_vars(e.second) : formula_free_so_vars(e.second);
        if (std::find(fvs.begin(), fvs.end(), j.formula->name) != fvs.end())
          return fail(path, "eigenvariable " + j.formula->name + " occurs in the context");
      }
      return;
    }

    if (r == "exists2_i" || r == "forall2_e") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      if (!alpha_equal(p.conclusion.subject, j.subject))
        return fail(path, "subject must be unchanged");
      if (!d.witness_formula) return fail(path, r + " needs witness-formula");
      const Formula& body = *d.witness_formula;
      const Formula& quant =
          r == "exists2_i" ? j.formula : p.conclusion.formula;
      if (r == "exists2_i" && quant->tag != FTag::ExistsSO)
        return fail(path, "conclusion must be a second-order existential");
      if (r == "forall2_e" && quant->tag != FTag::ForallSO)
        return fail(path, "premise must be a second-order universal");
      if (static_cast<int>(d.witness_params.size()) != quant->arity)
        return fail(path, "witness parameter count must match the arity");
      if (mode == TypingMode::Stateful && quant->arity != 0 && !internal(body))
        return fail(path, "external substitution: the witness formula mentions st "
                          "and has nonzero arity");
      Formula inst =
          formula_subst_so(quant->a, quant->name, d.witness_params, body);
      const Formula& got = r == "exists2_i" ? p.conclusion.formula : j.formula;
      if (!feq(got, inst)) return fail(path, "instance formula mismatch");
      return;
    }

    if (r == "cong") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      if (!alpha_equal(p.conclusion.subject, j.subject))
        return fail(path, "subject must be unchanged");
      if (!feq(congr_normalize(p.conclusion.formula), congr_normalize(j.formula)))
        return fail(path, "formulas are not congruent");
      return;
    }

    if (r == "mapsto_i") {
      if (!need_premises(1)) return;
      const Derivation& p = *d.premises[0];
      if (!same_ctx(p, "the")) return;
      if (!alpha_equal(p.conclusion.subject, j.subject))
        return fail(path, "subject must be unchanged");
      if (p.conclusion.formula->tag != FTag::Arrow)
        return fail(path, "premise must be an arrow");
      const Formula& A = p.conclusion.formula->a;
      const Formula& B = p.conclusion.formula->b;
      if (j.formula->tag == FTag::MapsTo) {
        if (!feq(j.formula->a, A) || !feq(j.formula->b, B))
          return fail(path, "value restriction does not match the arrow");
        return;
      }
      if (j.formula->tag == FTag::NatRestr) {
        if (A->tag != FTag::NatAtom || !feq(f_nat(j.formula->exprs[0]), A) ||
            !feq(j.formula->a, B))
          return fail(path, "Nat restriction does not match the arrow");
        return;
      }
      return fail(path, "conclusion must be a value restriction");
    }

    if (r == "mapsto_e") {
      if (!need_premises(2)) return;
      const Derivation& pf = *d.premises[0];
      const Derivation& pv = *d.premises[1];
      if (!same_ctx(pf, "first") || !same_ctx(pv, "second")) return;
      if (j.subject->tag != Tag::App) return fail(path, "mapsto_e subject must be an application");
      if (!alpha_equal(pf.conclusion.subject, j.subject->a) ||
          !alpha_equal(pv.conclusion.subject, j.subject->b))
        return fail(path, "premise subjects must match the application parts");
      if (!is_value(j.subject->b))
        return fail(path, "the argument must be a value");
      const Formula& vr = pf.conclusion.formula;
      if (vr->tag == FTag::MapsTo) {
        if (!feq(vr->a, pv.conclusion.formula)) return fail(path, "argument formula mismatch");
        if (!feq(vr->b, j.formula)) return fail(path, "codomain mismatch");
        return;
      }
      if (vr->tag == FTag::NatRestr) {
        if (!feq(f_nat(vr->exprs[0]), pv.conclusion.formula))
          return fail(path, "argument must prove the Nat atom");
        if (!feq(vr->a, j.formula)) return fail(path, "codomain mismatch");
        return;
      }
      return fail(path, "first premise must be a value restriction");
    }

    fail(path, "unknown rule " + r);
  }

  void walk(const Derivation& d, const std::string& path) {
    check(d, path);
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      walk(*d.premises[i], path + "." + std::to_string(i + 1));
  }
};

}  // namespace

TypingReport check_derivation(const Derivation& d, TypingMode mode) {
  Checker c{mode, {}};
  c.walk(d, "root");
  return c.report;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Judgment parse_judgment(const std::string& src) {
  // find a turnstile that is not part of the value-restriction arrow "|->"
  std::size_t bar = std::string::npos;
  for (std::size_t i = 0; i + 1 < src.size(); ++i) {
    if (src[i] == '|' && src[i + 1] == '-' && (i + 2 >= src.size() || src[i + 2] != '>')) {
      bar = i;
      break;
    }
  }
  if (bar == std::string::npos) throw FormulaError("judgment needs '|-': " + src);
  Judgment j;
  std::string ctx = trim(src.substr(0, bar));
  std::string rest = trim(src.substr(bar + 2));
  if (!ctx.empty()) {
    std::stringstream ss(ctx);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
      entry = trim(entry);
      if (entry.empty()) continue;
      auto colon = entry.find(':');
      if (colon == std::string::npos)
        throw FormulaError("context entry needs ':': " + entry);
      j.ctx.emplace_back(trim(entry.substr(0, colon)),
                         parse_formula(entry.substr(colon + 1)));
    }
  }
  auto colon = rest.find(':');
  if (colon == std::string::npos) throw FormulaError("judgment needs 'term : formula'");
  j.subject = parse_term(trim(rest.substr(0, colon)));
  j.formula = parse_formula(rest.substr(colon + 1));
  return j;
}

// "RULE name [key={value}]* :: judgment"
DerivationPtr parse_node(const std::string& line) {
  std::string s = trim(line);
  if (s.rfind("RULE ", 0) != 0) throw FormulaError("expected RULE line: " + line);
  s = trim(s.substr(5));
  auto d = std::make_shared<Derivation>();
  auto sep = s.find("::");
  if (sep == std::string::npos) throw FormulaError("RULE line needs '::'");
  std::string head = trim(s.substr(0, sep));
  d->conclusion = parse_judgment(s.substr(sep + 2));
  std::stringstream hs(head);
  hs >> d->rule;
  std::string attr;
  std::string pending;
  std::getline(hs, pending);
  std::size_t i = 0;
  while (i < pending.size()) {
    while (i < pending.size() && std::isspace(static_cast<unsigned char>(pending[i]))) ++i;
    if (i >= pending.size()) break;
    auto eqpos = pending.find("={", i);
    if (eqpos == std::string::npos) throw FormulaError("bad attribute in: " + head);
    std::string key = pending.substr(i, eqpos - i);
    auto close = pending.find('}', eqpos);
    if (close == std::string::npos) throw FormulaError("unterminated attribute value");
    std::string value = pending.substr(eqpos + 2, close - eqpos - 2);
    i = close + 1;
    if (key == "witness-expr") {
      // reuse the formula module's expression parser through a formula shim
      Formula shim = parse_formula("le(" + value + ", 0)");
      d->witness_expr = shim->exprs[0];
    } else if (key == "witness-formula") {
      d->witness_formula = parse_formula(value);
    } else if (key == "witness-params") {
      std::stringstream ps(value);
      std::string p;
      while (std::getline(ps, p, ',')) {
        p = trim(p);
        if (!p.empty()) d->witness_params.push_back(p);
      }
    } else {
      throw FormulaError("unknown attribute " + key);
    }
  }
  return d;
}

}  // namespace

DerivationPtr parse_derivation(const std::string& text) {
  std::vector<std::pair<int, DerivationPtr>> stack;
  DerivationPtr root;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    int indent = 0;
    while (indent < static_cast<int>(line.size()) && line[indent] == ' ') ++indent;
    DerivationPtr node = parse_node(t);
    while (!stack.empty() && stack.back().first >= indent) stack.pop_back();
    if (stack.empty()) {
      if (root) throw FormulaError("multiple roots in derivation");
      root = node;
    } else {
      stack.back().second->premises.push_back(node);
    }
    stack.emplace_back(indent, node);
  }
  if (!root) throw FormulaError("empty derivation");
  return root;
}

namespace {

std::string show_judgment(const Judgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.ctx.size(); ++i) {
    if (i) out += "; ";
    out += j.ctx[i].first + ": " + print_formula(j.ctx[i].second);
  }
  out += " |- " + print_term(j.subject) + " : " + print_formula(j.formula);
  return out;
}

void print_node(const Derivation& d, int indent, std::string& out) {
  out.append(indent, ' ');
  out += "RULE " + d.rule;
  if (d.witness_expr) out += " witness-expr={" + print_expr(*d.witness_expr) + "}";
  if (d.witness_formula)
    out += " witness-formula={" + print_formula(*d.witness_formula) + "}";
  if (!d.witness_params.empty()) {
    out += " witness-params={";
    for (std::size_t i = 0; i < d.witness_params.size(); ++i) {
      if (i) out += ",";
      out += d.witness_params[i];
    }
    out += "}";
  }
  out += " :: " + show_judgment(d.conclusion) + "\n";
  for (const auto& p : d.premises) print_node(*p, indent + 2, out);
}

}  // namespace

std::string print_derivation(const Derivation& d) {
  std::string out;
  print_node(d, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Simple inference over the arrow/and fragment.

namespace {

struct Infer {
  int next_meta = 0;
  std::map<std::string, Formula> subst;

  Formula meta() { return f_predvar("?" + std::to_string(next_meta++)); }

  Formula walk(const Formula& f) {
    if (f->tag == FTag::PredVar && !f->name.empty() && f->name[0] == '?') {
      auto it = subst.find(f->name);
      if (it != subst.end()) return walk(it->second);
    }
    return f;
  }

  Formula resolve(const Formula& f) {
    Formula w = walk(f);
    switch (w->tag) {
      case FTag::Arrow:
        return f_arrow(resolve(w->a), resolve(w->b));
      case FTag::And:
        return f_and(resolve(w->a), resolve(w->b));
      default:
        return w;
    }
  }

  bool occurs(const std::string& m, const Formula& f) {
    Formula w = walk(f);
    if (w->tag == FTag::PredVar && w->name == m) return true;
    if (w->tag == FTag::Arrow || w->tag == FTag::And)
      return occurs(m, w->a) || occurs(m, w->b);
    return false;
  }

  bool unify(const Formula& a, const Formula& b) {
    Formula x = walk(a), y = walk(b);
    if (x->tag == FTag::PredVar && !x->name.empty() && x->name[0] == '?') {
      if (y->tag == FTag::PredVar && y->name == x->name) return true;
      if (occurs(x->name, y)) return false;
      subst[x->name] = y;
      return true;
    }
    if (y->tag == FTag::PredVar && !y->name.empty() && y->name[0] == '?')
      return unify(y, x);
    if ((x->tag == FTag::Arrow && y->tag == FTag::Arrow) ||
        (x->tag == FTag::And && y->tag == FTag::And))
      return unify(x->a, y->a) && unify(x->b, y->b);
    return formula_alpha_equal(x, y);
  }

  // Builds the derivation alongside inference; judgments carry metavariables
  // until the final resolution pass.
  std::optional<std::pair<Formula, DerivationPtr>> infer(
      std::vector<std::pair<std::string, Formula>>& env, const Term& t) {
    auto node = [&](const std::string& rule, const Formula& f,
                    std::vector<DerivationPtr> prems) {
      auto d = std::make_shared<Derivation>();
      d->rule = rule;
      d->conclusion = {env, t, f};
      d->premises = std::move(prems);
      return std::make_pair(f, d);
    };
    switch (t->tag) {
      case Tag::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return node("ax", it->second, {});
        return std::nullopt;
      }
      case Tag::Zero:
        return node("zero", f_nat(ezero()), {});
      case Tag::Abs: {
        Formula h = meta();
        env.emplace_back(t->name, h);
        auto body = infer(env, t->a);
        env.pop_back();
        if (!body) return std::nullopt;
        return node("arrow_i", f_arrow(h, body->first), {body->second});
      }
      case Tag::App: {
        auto f = infer(env, t->a);
        if (!f) return std::nullopt;
        auto a = infer(env, t->b);
        if (!a) return std::nullopt;
        Formula r = meta();
        if (!unify(f->first, f_arrow(a->first, r))) return std::nullopt;
        return node("arrow_e", r, {f->second, a->second});
      }
      case Tag::Pair: {
        auto a = infer(env, t->a);
        if (!a) return std::nullopt;
        auto b = infer(env, t->b);
        if (!b) return std::nullopt;
        return node("and_i", f_and(a->first, b->first), {a->second, b->second});
      }
      case Tag::Proj1:
      case Tag::Proj2: {
        auto p = infer(env, t->a);
        if (!p) return std::nullopt;
        Formula a = meta(), b = meta();
        if (!unify(p->first, f_and(a, b))) return std::nullopt;
        return node(t->tag == Tag::Proj1 ? "and_e1" : "and_e2",
                    t->tag == Tag::Proj1 ? a : b, {p->second});
      }
      default:
        return std::nullopt;  // no rule in the simple fragment
    }
  }
};

// Rename leftover metavariables to A, B, C, ...
Formula prettify(const Formula& f, std::map<std::string, std::string>& names) {
  switch (f->tag) {
    case FTag::PredVar:
      if (!f->name.empty() && f->name[0] == '?') {
        auto it = names.find(f->name);
        if (it == names.end()) {
          std::string fresh(1, static_cast<char>('A' + (names.size() % 26)));
          if (names.size() >= 26) fresh += std::to_string(names.size() / 26);
          it = names.emplace(f->name, fresh).first;
        }
        return f_predvar(it->second);
      }
      return f;
    case FTag::Arrow:
      return f_arrow(prettify(f->a, names), prettify(f->b, names));
    case FTag::And:
      return f_and(prettify(f->a, names), prettify(f->b, names));
    default:
      return f;
  }
}

void prettify_derivation(Derivation& d, std::map<std::string, std::string>& names,
                         Infer& inf) {
  for (auto& e : d.conclusion.ctx) e.second = prettify(inf.resolve(e.second), names);
  d.conclusion.formula = prettify(inf.resolve(d.conclusion.formula), names);
  for (auto& p : d.premises) prettify_derivation(*p, names, inf);
}

}  // namespace

std::optional<InferResult> infer_simple(
    const std::vector<std::pair<std::string, Formula>>& ctx, const Term& t) {
  Infer inf;
  std::vector<std::pair<std::string, Formula>> env = ctx;
  auto got = inf.infer(env, t);
  if (!got) return std::nullopt;
  std::map<std::string, std::string> names;
  prettify_derivation(*got->second, names, inf);
  return InferResult{got->second->conclusion.formula, got->second};
}

}  // namespace nsr
