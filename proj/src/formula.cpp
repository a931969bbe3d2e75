#include "nsr/formula.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <set>

namespace nsr {

namespace {

FOExpr emake(ExprNode n) { return std::make_shared<ExprNode>(std::move(n)); }
Formula fmake(FormulaNode n) { return std::make_shared<FormulaNode>(std::move(n)); }

struct FunEntry {
  int arity;
  ArithFun fn;
};

std::map<std::string, FunEntry>& fun_table() {
  static std::map<std::string, FunEntry> t = [] {
    std::map<std::string, FunEntry> m;
    m["add"] = {2, [](const std::vector<std::uint64_t>& a) { return a[0] + a[1]; }};
    m["mul"] = {2, [](const std::vector<std::uint64_t>& a) { return a[0] * a[1]; }};
    m["mod"] = {2, [](const std::vector<std::uint64_t>& a) {
                  return a[1] == 0 ? a[0] : a[0] % a[1];
                }};
    m["next_odd"] = {1, [](const std::vector<std::uint64_t>& a) {
                       return a[0] % 2 == 1 ? a[0] : a[0] + 1;
                     }};
    m["max"] = {2, [](const std::vector<std::uint64_t>& a) {
                  return a[0] > a[1] ? a[0] : a[1];
                }};
    return m;
  }();
  return t;
}

std::map<std::string, RelFun>& rel_table() {
  static std::map<std::string, RelFun> t = [] {
    std::map<std::string, RelFun> m;
    m["le"] = [](std::uint64_t a, std::uint64_t b) { return a <= b; };
    m["lt"] = [](std::uint64_t a, std::uint64_t b) { return a < b; };
    m["req"] = [](std::uint64_t a, std::uint64_t b) { return a == b; };
    m["ge"] = [](std::uint64_t a, std::uint64_t b) { return a >= b; };
    m["gt"] = [](std::uint64_t a, std::uint64_t b) { return a > b; };
    // (y+1) | (x+1); total and nontrivial at y = 0
    m["succ_divides"] = [](std::uint64_t x, std::uint64_t y) {
      return (x + 1) % (y + 1) == 0;
    };
    return m;
  }();
  return t;
}

std::atomic<std::uint64_t> f_fresh{0};

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  for (;;) {
    std::string cand = base + "_" + std::to_string(++f_fresh);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

FOExpr evar(const std::string& x) { return emake({ETag::Var, x, {}}); }
FOExpr ezero() {
  static const FOExpr z = emake({ETag::Zero, "", {}});
  return z;
}
FOExpr esucc(const FOExpr& e) { return emake({ETag::Succ, "", {e}}); }
FOExpr econst(std::uint64_t n) {
  FOExpr e = ezero();
  for (std::uint64_t i = 0; i < n; ++i) e = esucc(e);
  return e;
}
FOExpr efun(const std::string& f, std::vector<FOExpr> args) {
  auto it = fun_table().find(f);
  if (it == fun_table().end()) throw FormulaError("unknown function symbol " + f);
  if (static_cast<int>(args.size()) != it->second.arity)
    throw FormulaError("arity mismatch for " + f);
  return emake({ETag::Fun, f, std::move(args)});
}

bool has_fun(const std::string& name) { return fun_table().count(name) > 0; }
void register_fun(const std::string& name, int arity, ArithFun f) {
  fun_table()[name] = {arity, std::move(f)};
}
bool has_rel(const std::string& name) { return rel_table().count(name) > 0; }
void register_rel(const std::string& name, RelFun r) { rel_table()[name] = std::move(r); }
bool eval_rel(const std::string& name, std::uint64_t a, std::uint64_t b) {
  auto it = rel_table().find(name);
  if (it == rel_table().end()) throw FormulaError("unknown relation " + name);
  return it->second(a, b);
}

std::uint64_t apply_fun(const std::string& name, const std::vector<std::uint64_t>& args) {
  auto it = fun_table().find(name);
  if (it == fun_table().end()) throw FormulaError("unknown function symbol " + name);
  return it->second.fn(args);
}

namespace {
void expr_fvs(const FOExpr& e, std::set<std::string>& out) {
  switch (e->tag) {
    case ETag::Var:
      out.insert(e->name);
      return;
    case ETag::Zero:
      return;
    default:
      for (const auto& a : e->args) expr_fvs(a, out);
  }
}
}  // namespace

std::vector<std::string> expr_free_vars(const FOExpr& e) {
  std::set<std::string> s;
  expr_fvs(e, s);
  return {s.begin(), s.end()};
}

FOExpr expr_subst(const FOExpr& e, const std::string& x, const FOExpr& v) {
  switch (e->tag) {
    case ETag::Var:
      return e->name == x ? v : e;
    case ETag::Zero:
      return e;
    case ETag::Succ:
      return esucc(expr_subst(e->args[0], x, v));
    case ETag::Fun: {
      std::vector<FOExpr> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(expr_subst(a, x, v));
      return emake({ETag::Fun, e->name, std::move(args)});
    }
  }
  return e;
}

namespace {
std::optional<std::uint64_t> expr_const(const FOExpr& e) {
  std::uint64_t n = 0;
  const ExprNode* p = e.get();
  for (;;) {
    if (p->tag == ETag::Zero) return n;
    if (p->tag == ETag::Succ) {
      ++n;
      p = p->args[0].get();
      continue;
    }
    return std::nullopt;
  }
}
}  // namespace

std::string print_expr(const FOExpr& e) {
  if (auto n = expr_const(e)) return *n == 0 ? "0" : "#" + std::to_string(*n);
  switch (e->tag) {
    case ETag::Var:
      return e->name;
    case ETag::Succ:
      return "S(" + print_expr(e->args[0]) + ")";
    case ETag::Fun: {
      std::string out = e->name + "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e->args[i]);
      }
      return out + ")";
    }
    default:
      return "0";
  }
}

// ---------------------------------------------------------------------------

Formula f_st(const FOExpr& e) { return fmake({FTag::St, "", 0, {e}, nullptr, nullptr}); }
Formula f_nat(const FOExpr& e) { return fmake({FTag::NatAtom, "", 0, {e}, nullptr, nullptr}); }
Formula f_predvar(const std::string& X, std::vector<FOExpr> args) {
  return fmake({FTag::PredVar, X, static_cast<int>(args.size()), std::move(args), nullptr, nullptr});
}
Formula f_rel(const std::string& R, const FOExpr& e1, const FOExpr& e2) {
  if (!has_rel(R)) throw FormulaError("unknown relation " + R);
  return fmake({FTag::Rel, R, 0, {e1, e2}, nullptr, nullptr});
}
Formula f_natrestr(const FOExpr& e, const Formula& body) {
  return fmake({FTag::NatRestr, "", 0, {e}, body, nullptr});
}
Formula f_mapsto(const Formula& a, const Formula& b) {
  return fmake({FTag::MapsTo, "", 0, {}, a, b});
}
Formula f_arrow(const Formula& a, const Formula& b) {
  return fmake({FTag::Arrow, "", 0, {}, a, b});
}
Formula f_and(const Formula& a, const Formula& b) {
  return fmake({FTag::And, "", 0, {}, a, b});
}
Formula f_or(const Formula& a, const Formula& b) {
  return fmake({FTag::Or, "", 0, {}, a, b});
}
Formula f_forall(const std::string& x, const Formula& a) {
  return fmake({FTag::ForallFO, x, 0, {}, a, nullptr});
}
Formula f_exists(const std::string& x, const Formula& a) {
  return fmake({FTag::ExistsFO, x, 0, {}, a, nullptr});
}
Formula f_forall2(const std::string& X, int arity, const Formula& a) {
  return fmake({FTag::ForallSO, X, arity, {}, a, nullptr});
}
Formula f_exists2(const std::string& X, int arity, const Formula& a) {
  return fmake({FTag::ExistsSO, X, arity, {}, a, nullptr});
}

Formula f_top() { return f_exists2("X", 0, f_predvar("X")); }
Formula f_bot() { return f_forall2("X", 0, f_predvar("X")); }
Formula f_not(const Formula& a) { return f_arrow(a, f_bot()); }
Formula f_leibniz(const FOExpr& e1, const FOExpr& e2) {
  return f_forall2("Z", 1, f_arrow(f_predvar("Z", {e1}), f_predvar("Z", {e2})));
}
Formula f_natp(const FOExpr& e) {
  return f_forall2("X", 0, f_arrow(f_natrestr(e, f_predvar("X")), f_predvar("X")));
}
Formula f_fa_n(const std::string& x, const Formula& a) {
  return f_forall(x, f_arrow(f_nat(evar(x)), a));
}
Formula f_ex_n(const std::string& x, const Formula& a) {
  return f_exists(x, f_and(f_nat(evar(x)), a));
}
Formula f_fa_bv(const std::string& x, const Formula& a) {
  return f_forall(x, f_natrestr(evar(x), a));
}
Formula f_ex_bv(const std::string& x, const Formula& a) {
  return f_forall2("X", 0, f_arrow(f_fa_bv(x, f_arrow(a, f_predvar("X"))), f_predvar("X")));
}
Formula f_fa_st(const std::string& x, const Formula& a) {
  return f_forall(x, f_arrow(f_st(evar(x)), a));
}
Formula f_ex_st(const std::string& x, const Formula& a) {
  return f_exists(x, f_and(f_st(evar(x)), a));
}
Formula f_fa_stbv(const std::string& x, const Formula& a) {
  return f_forall(x, f_arrow(f_st(evar(x)), f_natrestr(evar(x), a)));
}
Formula f_ex_stbv(const std::string& x, const Formula& a) {
  return f_forall2("X", 0,
                   f_arrow(f_fa_stbv(x, f_arrow(a, f_predvar("X"))), f_predvar("X")));
}

bool internal(const Formula& f) {
  if (f->tag == FTag::St) return false;
  if (f->a && !internal(f->a)) return false;
  if (f->b && !internal(f->b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Alpha equality.

namespace {

struct NamePair {
  std::string l, r;
};

bool fo_match(const std::vector<NamePair>& env, const std::string& l,
              const std::string& r) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool hl = it->l == l, hr = it->r == r;
    if (hl || hr) return hl && hr;
  }
  return l == r;
}

bool expr_alpha(const FOExpr& a, const FOExpr& b, const std::vector<NamePair>& env) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ETag::Var:
      return fo_match(env, a->name, b->name);
    case ETag::Zero:
      return true;
    case ETag::Succ:
      return expr_alpha(a->args[0], b->args[0], env);
    case ETag::Fun:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!expr_alpha(a->args[i], b->args[i], env)) return false;
      return true;
  }
  return false;
}

bool falpha(const Formula& a, const Formula& b, std::vector<NamePair>& fo,
            std::vector<NamePair>& so) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FTag::St:
    case FTag::NatAtom:
      return expr_alpha(a->exprs[0], b->exprs[0], fo);
    case FTag::Rel:
      return a->name == b->name && expr_alpha(a->exprs[0], b->exprs[0], fo) &&
             expr_alpha(a->exprs[1], b->exprs[1], fo);
    case FTag::PredVar: {
      if (!fo_match(so, a->name, b->name)) return false;
      if (a->exprs.size() != b->exprs.size()) return false;
      for (std::size_t i = 0; i < a->exprs.size(); ++i)
        if (!expr_alpha(a->exprs[i], b->exprs[i], fo)) return false;
      return true;
    }
    case FTag::NatRestr:
      return expr_alpha(a->exprs[0], b->exprs[0], fo) && falpha(a->a, b->a, fo, so);
    case FTag::MapsTo:
    case FTag::Arrow:
    case FTag::And:
    case FTag::Or:
      return falpha(a->a, b->a, fo, so) && falpha(a->b, b->b, fo, so);
    case FTag::ForallFO:
    case FTag::ExistsFO: {
      fo.push_back({a->name, b->name});
      bool ok = falpha(a->a, b->a, fo, so);
      fo.pop_back();
      return ok;
    }
    case FTag::ForallSO:
    case FTag::ExistsSO: {
      if (a->arity != b->arity) return false;
      so.push_back({a->name, b->name});
      bool ok = falpha(a->a, b->a, fo, so);
      so.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool formula_alpha_equal(const Formula& a, const Formula& b) {
  std::vector<NamePair> fo, so;
  return falpha(a, b, fo, so);
}

// ---------------------------------------------------------------------------
// Free variables and substitution.

namespace {

void ffv(const Formula& f, std::set<std::string>& fo, std::set<std::string>& so,
         std::vector<std::string>& boundFo, std::vector<std::string>& boundSo) {
  auto fo_free = [&](const FOExpr& e) {
    std::set<std::string> vs;
    expr_fvs(e, vs);
    for (const auto& v : vs)
      if (std::find(boundFo.begin(), boundFo.end(), v) == boundFo.end()) fo.insert(v);
  };
  switch (f->tag) {
    case FTag::St:
    case FTag::NatAtom:
      fo_free(f->exprs[0]);
      return;
    case FTag::Rel:
      fo_free(f->exprs[0]);
      fo_free(f->exprs[1]);
      return;
    case FTag::PredVar:
      if (std::find(boundSo.begin(), boundSo.end(), f->name) == boundSo.end())
        so.insert(f->name);
      for (const auto& e : f->exprs) fo_free(e);
      return;
    case FTag::NatRestr:
      fo_free(f->exprs[0]);
      ffv(f->a, fo, so, boundFo, boundSo);
      return;
    case FTag::MapsTo:
    case FTag::Arrow:
    case FTag::And:
    case FTag::Or:
      ffv(f->a, fo, so, boundFo, boundSo);
      ffv(f->b, fo, so, boundFo, boundSo);
      return;
    case FTag::ForallFO:
    case FTag::ExistsFO:
      boundFo.push_back(f->name);
      ffv(f->a, fo, so, boundFo, boundSo);
      boundFo.pop_back();
      return;
    case FTag::ForallSO:
    case FTag::ExistsSO:
      boundSo.push_back(f->name);
      ffv(f->a, fo, so, boundFo, boundSo);
      boundSo.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::string> formula_free_fo_vars(const Formula& f) {
  std::set<std::string> fo, so;
  std::vector<std::string> bf, bs;
  ffv(f, fo, so, bf, bs);
  return {fo.begin(), fo.end()};
}

std::vector<std::string> formula_free_so_vars(const Formula& f) {
  std::set<std::string> fo, so;
  std::vector<std::string> bf, bs;
  ffv(f, fo, so, bf, bs);
  return {so.begin(), so.end()};
}

Formula formula_subst_fo(const Formula& f, const std::string& x, const FOExpr& e) {
  auto sub_expr = [&](const FOExpr& ex) { return expr_subst(ex, x, e); };
  switch (f->tag) {
    case FTag::St:
      return f_st(sub_expr(f->exprs[0]));
    case FTag::NatAtom:
      return f_nat(sub_expr(f->exprs[0]));
    case FTag::Rel:
      return f_rel(f->name, sub_expr(f->exprs[0]), sub_expr(f->exprs[1]));
    case FTag::PredVar: {
      std::vector<FOExpr> args;
      for (const auto& a : f->exprs) args.push_back(sub_expr(a));
      return f_predvar(f->name, std::move(args));
    }
    case FTag::NatRestr:
      return f_natrestr(sub_expr(f->exprs[0]), formula_subst_fo(f->a, x, e));
    case FTag::MapsTo:
      return f_mapsto(formula_subst_fo(f->a, x, e), formula_subst_fo(f->b, x, e));
    case FTag::Arrow:
      return f_arrow(formula_subst_fo(f->a, x, e), formula_subst_fo(f->b, x, e));
    case FTag::And:
      return f_and(formula_subst_fo(f->a, x, e), formula_subst_fo(f->b, x, e));
    case FTag::Or:
      return f_or(formula_subst_fo(f->a, x, e), formula_subst_fo(f->b, x, e));
    case FTag::ForallFO:
    case FTag::ExistsFO: {
      if (f->name == x) return f;
      std::string y = f->name;
      Formula body = f->a;
      auto evs = expr_free_vars(e);
      if (std::find(evs.begin(), evs.end(), y) != evs.end()) {
        std::set<std::string> avoid(evs.begin(), evs.end());
        for (const auto& v : formula_free_fo_vars(body)) avoid.insert(v);
        std::string y2 = fresh_var(y, avoid);
        body = formula_subst_fo(body, y, evar(y2));
        y = y2;
      }
      body = formula_subst_fo(body, x, e);
      return f->tag == FTag::ForallFO ? f_forall(y, body) : f_exists(y, body);
    }
    case FTag::ForallSO:
    case FTag::ExistsSO: {
      Formula body = formula_subst_fo(f->a, x, e);
      return f->tag == FTag::ForallSO ? f_forall2(f->name, f->arity, body)
                                      : f_exists2(f->name, f->arity, body);
    }
  }
  return f;
}

Formula formula_subst_so(const Formula& f, const std::string& X,
                         const std::vector<std::string>& params, const Formula& body) {
  switch (f->tag) {
    case FTag::St:
    case FTag::NatAtom:
    case FTag::Rel:
      return f;
    case FTag::PredVar: {
      if (f->name != X) return f;
      if (f->exprs.size() != params.size())
        throw FormulaError("arity mismatch substituting " + X);
      Formula out = body;
      for (std::size_t i = 0; i < params.size(); ++i)
        out = formula_subst_fo(out, params[i], f->exprs[i]);
      return out;
    }
    case FTag::NatRestr:
      return f_natrestr(f->exprs[0], formula_subst_so(f->a, X, params, body));
    case FTag::MapsTo:
      return f_mapsto(formula_subst_so(f->a, X, params, body),
                      formula_subst_so(f->b, X, params, body));
    case FTag::Arrow:
      return f_arrow(formula_subst_so(f->a, X, params, body),
                     formula_subst_so(f->b, X, params, body));
    case FTag::And:
      return f_and(formula_subst_so(f->a, X, params, body),
                   formula_subst_so(f->b, X, params, body));
    case FTag::Or:
      return f_or(formula_subst_so(f->a, X, params, body),
                  formula_subst_so(f->b, X, params, body));
    case FTag::ForallFO:
    case FTag::ExistsFO: {
      std::string y = f->name;
      Formula sub = f->a;
      // avoid capturing body's free FO variables other than the parameters
      auto bfv = formula_free_fo_vars(body);
      bool captures = std::find(bfv.begin(), bfv.end(), y) != bfv.end() &&
                      std::find(params.begin(), params.end(), y) == params.end();
      if (captures) {
        std::set<std::string> avoid(bfv.begin(), bfv.end());
        for (const auto& v : formula_free_fo_vars(sub)) avoid.insert(v);
        std::string y2 = fresh_var(y, avoid);
        sub = formula_subst_fo(sub, y, evar(y2));
        y = y2;
      }
      sub = formula_subst_so(sub, X, params, body);
      return f->tag == FTag::ForallFO ? f_forall(y, sub) : f_exists(y, sub);
    }
    case FTag::ForallSO:
    case FTag::ExistsSO: {
      if (f->name == X) return f;
      std::string Y = f->name;
      Formula sub = f->a;
      auto bsv = formula_free_so_vars(body);
      if (std::find(bsv.begin(), bsv.end(), Y) != bsv.end()) {
        std::set<std::string> avoid(bsv.begin(), bsv.end());
        for (const auto& v : formula_free_so_vars(sub)) avoid.insert(v);
        std::string Y2 = fresh_var(Y, avoid);
        // rename Y to Y2 in sub
        std::vector<std::string> ps;
        std::vector<FOExpr> args;
        for (int i = 0; i < f->arity; ++i) ps.push_back("_p" + std::to_string(i));
        for (const auto& p : ps) args.push_back(evar(p));
        sub = formula_subst_so(sub, Y, ps, f_predvar(Y2, args));
        Y = Y2;
      }
      sub = formula_subst_so(sub, X, params, body);
      return f->tag == FTag::ForallSO ? f_forall2(Y, f->arity, sub)
                                      : f_exists2(Y, f->arity, sub);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Congruence normalization.

Formula congr_normalize(const Formula& f) {
  switch (f->tag) {
    case FTag::St:
    case FTag::NatAtom:
    case FTag::Rel:
    case FTag::PredVar:
      return f;
    case FTag::NatRestr:
      return f_natrestr(f->exprs[0], congr_normalize(f->a));
    case FTag::And:
      return f_and(congr_normalize(f->a), congr_normalize(f->b));
    case FTag::Or:
      return f_or(congr_normalize(f->a), congr_normalize(f->b));
    case FTag::ForallFO:
      return f_forall(f->name, congr_normalize(f->a));
    case FTag::ExistsFO:
      return f_exists(f->name, congr_normalize(f->a));
    case FTag::ForallSO:
      return f_forall2(f->name, f->arity, congr_normalize(f->a));
    case FTag::ExistsSO:
      return f_exists2(f->name, f->arity, congr_normalize(f->a));
    case FTag::Arrow:
    case FTag::MapsTo: {
      Formula a = congr_normalize(f->a);
      Formula b = congr_normalize(f->b);
      bool mapsto = f->tag == FTag::MapsTo;
      if (a->tag == FTag::ExistsFO) {
        std::string x = a->name;
        auto bfv = formula_free_fo_vars(b);
        Formula abody = a->a;
        if (std::find(bfv.begin(), bfv.end(), x) != bfv.end()) {
          std::set<std::string> avoid(bfv.begin(), bfv.end());
          for (const auto& v : formula_free_fo_vars(abody)) avoid.insert(v);
          std::string x2 = fresh_var(x, avoid);
          abody = formula_subst_fo(abody, x, evar(x2));
          x = x2;
        }
        Formula inner = mapsto ? f_mapsto(abody, b) : f_arrow(abody, b);
        return f_forall(x, congr_normalize(inner));
      }
      if (a->tag == FTag::ExistsSO) {
        std::string X = a->name;
        auto bsv = formula_free_so_vars(b);
        Formula abody = a->a;
        if (std::find(bsv.begin(), bsv.end(), X) != bsv.end()) {
          std::set<std::string> avoid(bsv.begin(), bsv.end());
          for (const auto& v : formula_free_so_vars(abody)) avoid.insert(v);
          std::string X2 = fresh_var(X, avoid);
          std::vector<std::string> ps;
          std::vector<FOExpr> args;
          for (int i = 0; i < a->arity; ++i) ps.push_back("_p" + std::to_string(i));
          for (const auto& p : ps) args.push_back(evar(p));
          abody = formula_subst_so(abody, X, ps, f_predvar(X2, args));
          X = X2;
        }
        Formula inner = mapsto ? f_mapsto(abody, b) : f_arrow(abody, b);
        return f_forall2(X, a->arity, congr_normalize(inner));
      }
      return mapsto ? f_mapsto(a, b) : f_arrow(a, b);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printer.

namespace {

int prec_of(const Formula& f) {
  switch (f->tag) {
    case FTag::ForallFO:
    case FTag::ExistsFO:
    case FTag::ForallSO:
    case FTag::ExistsSO:
      return 0;
    case FTag::Arrow:
    case FTag::MapsTo:
    case FTag::NatRestr:
      return 1;
    case FTag::Or:
      return 2;
    case FTag::And:
      return 3;
    default:
      return 4;
  }
}

void fprint(const Formula& f, std::string& out, int min_prec) {
  int p = prec_of(f);
  bool paren = p < min_prec;
  if (paren) out += "(";
  switch (f->tag) {
    case FTag::St:
      out += "st(" + print_expr(f->exprs[0]) + ")";
      break;
    case FTag::NatAtom:
      out += "Nat(" + print_expr(f->exprs[0]) + ")";
      break;
    case FTag::Rel:
      out += f->name + "(" + print_expr(f->exprs[0]) + ", " + print_expr(f->exprs[1]) + ")";
      break;
    case FTag::PredVar:
      out += f->name;
      if (!f->exprs.empty()) {
        out += "(";
        for (std::size_t i = 0; i < f->exprs.size(); ++i) {
          if (i) out += ", ";
          out += print_expr(f->exprs[i]);
        }
        out += ")";
      }
      break;
    case FTag::NatRestr:
      out += "Nat(" + print_expr(f->exprs[0]) + ") |-> ";
      fprint(f->a, out, 1);
      break;
    case FTag::MapsTo:
      fprint(f->a, out, 2);
      out += " |-> ";
      fprint(f->b, out, 1);
      break;
    case FTag::Arrow:
      fprint(f->a, out, 2);
      out += " -> ";
      fprint(f->b, out, 1);
      break;
    case FTag::Or:
      fprint(f->a, out, 3);
      out += " \\/ ";
      fprint(f->b, out, 3);
      break;
    case FTag::And:
      fprint(f->a, out, 4);
      out += " /\\ ";
      fprint(f->b, out, 4);
      break;
    case FTag::ForallFO:
      out += "forall " + f->name + ". ";
      fprint(f->a, out, 0);
      break;
    case FTag::ExistsFO:
      out += "exists " + f->name + ". ";
      fprint(f->a, out, 0);
      break;
    case FTag::ForallSO:
      out += "forall2 " + f->name + ":" + std::to_string(f->arity) + ". ";
      fprint(f->a, out, 0);
      break;
    case FTag::ExistsSO:
      out += "exists2 " + f->name + ":" + std::to_string(f->arity) + ". ";
      fprint(f->a, out, 0);
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  fprint(f, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

struct FTok {
  enum Kind { Ident, Num, LParen, RParen, Comma, Dot, Colon, Arrow, MapsTo, And,
              Or, End } kind;
  std::string text;
  std::uint64_t num = 0;
  std::size_t pos = 0;
};

std::vector<FTok> flex(const std::string& s) {
  std::vector<FTok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t p = i;
    auto push = [&](FTok::Kind k, std::string t) { out.push_back({k, std::move(t), 0, p}); };
    if (c == '(') { push(FTok::LParen, "("); ++i; continue; }
    if (c == ')') { push(FTok::RParen, ")"); ++i; continue; }
    if (c == ',') { push(FTok::Comma, ","); ++i; continue; }
    if (c == '.') { push(FTok::Dot, "."); ++i; continue; }
    if (c == ':') { push(FTok::Colon, ":"); ++i; continue; }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') { push(FTok::Arrow, "->"); i += 2; continue; }
    if (c == '|' && i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
      push(FTok::MapsTo, "|->");
      i += 3;
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '\\') { push(FTok::And, "/\\"); i += 2; continue; }
    if (c == '\\' && i + 1 < s.size() && s[i + 1] == '/') { push(FTok::Or, "\\/"); i += 2; continue; }
    if (c == '#') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw ParseError("expected digits after '#'", p);
      FTok t{FTok::Num, s.substr(i, j - i), 0, p};
      t.num = std::stoull(t.text);
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      FTok t{FTok::Num, s.substr(i, j - i), 0, p};
      t.num = std::stoull(t.text);
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({FTok::Ident, s.substr(i, j - i), 0, p});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", p);
  }
  out.push_back({FTok::End, "", 0, s.size()});
  return out;
}

struct FParser {
  const std::vector<FTok>& toks;
  std::size_t i = 0;

  const FTok& peek() const { return toks[i]; }
  const FTok& next() { return toks[i++]; }
  void expect(FTok::Kind k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i;
  }

  FOExpr parse_expr() {
    const FTok tk = peek();
    if (tk.kind == FTok::Num) {
      next();
      return econst(tk.num);
    }
    if (tk.kind == FTok::Ident) {
      next();
      if (tk.text == "S") {
        expect(FTok::LParen, "'('");
        FOExpr e = parse_expr();
        expect(FTok::RParen, "')'");
        return esucc(e);
      }
      if (peek().kind == FTok::LParen && has_fun(tk.text)) {
        next();
        std::vector<FOExpr> args;
        if (peek().kind != FTok::RParen) {
          args.push_back(parse_expr());
          while (peek().kind == FTok::Comma) {
            next();
            args.push_back(parse_expr());
          }
        }
        expect(FTok::RParen, "')'");
        return efun(tk.text, std::move(args));
      }
      return evar(tk.text);
    }
    if (tk.kind == FTok::LParen) {
      next();
      FOExpr e = parse_expr();
      expect(FTok::RParen, "')'");
      return e;
    }
    throw ParseError("expected a first-order expression", tk.pos);
  }

  Formula parse() {
    Formula f = parse_impl();
    if (peek().kind != FTok::End) throw ParseError("trailing input", peek().pos);
    return f;
  }

  Formula parse_impl() {
    Formula lhs = parse_or();
    if (peek().kind == FTok::Arrow) {
      next();
      return f_arrow(lhs, parse_impl());
    }
    if (peek().kind == FTok::MapsTo) {
      next();
      Formula rhs = parse_impl();
      if (lhs->tag == FTag::NatAtom) return f_natrestr(lhs->exprs[0], rhs);
      return f_mapsto(lhs, rhs);
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == FTok::Or) {
      next();
      f = f_or(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_atomic();
    while (peek().kind == FTok::And) {
      next();
      f = f_and(f, parse_atomic());
    }
    return f;
  }

  std::string binder_name() {
    if (peek().kind != FTok::Ident) throw ParseError("expected a variable", peek().pos);
    return next().text;
  }

  Formula parse_atomic() {
    const FTok tk = peek();
    if (tk.kind == FTok::LParen) {
      next();
      Formula f = parse_impl();
      expect(FTok::RParen, "')'");
      return f;
    }
    if (tk.kind != FTok::Ident) throw ParseError("expected a formula", tk.pos);
    const std::string& w = tk.text;

    auto quant = [&](auto make) {
      next();
      std::string x = binder_name();
      expect(FTok::Dot, "'.'");
      return make(x, parse_impl());
    };
    if (w == "forall") return quant([](const std::string& x, const Formula& a) { return f_forall(x, a); });
    if (w == "exists") return quant([](const std::string& x, const Formula& a) { return f_exists(x, a); });
    if (w == "fa_n") return quant([](const std::string& x, const Formula& a) { return f_fa_n(x, a); });
    if (w == "ex_n") return quant([](const std::string& x, const Formula& a) { return f_ex_n(x, a); });
    if (w == "fa_bv") return quant([](const std::string& x, const Formula& a) { return f_fa_bv(x, a); });
    if (w == "ex_bv") return quant([](const std::string& x, const Formula& a) { return f_ex_bv(x, a); });
    if (w == "fa_st") return quant([](const std::string& x, const Formula& a) { return f_fa_st(x, a); });
    if (w == "ex_st") return quant([](const std::string& x, const Formula& a) { return f_ex_st(x, a); });
    if (w == "fa_stbv") return quant([](const std::string& x, const Formula& a) { return f_fa_stbv(x, a); });
    if (w == "ex_stbv") return quant([](const std::string& x, const Formula& a) { return f_ex_stbv(x, a); });
    if (w == "forall2" || w == "exists2") {
      next();
      std::string X = binder_name();
      expect(FTok::Colon, "':'");
      if (peek().kind != FTok::Num) throw ParseError("expected an arity", peek().pos);
      int k = static_cast<int>(next().num);
      expect(FTok::Dot, "'.'");
      Formula body = parse_impl();
      return w == "forall2" ? f_forall2(X, k, body) : f_exists2(X, k, body);
    }
    if (w == "bot") { next(); return f_bot(); }
    if (w == "top") { next(); return f_top(); }
    if (w == "not") {
      next();
      return f_not(parse_atomic());
    }
    if (w == "st") {
      next();
      expect(FTok::LParen, "'('");
      FOExpr e = parse_expr();
      expect(FTok::RParen, "')'");
      return f_st(e);
    }
    if (w == "Nat") {
      next();
      expect(FTok::LParen, "'('");
      FOExpr e = parse_expr();
      expect(FTok::RParen, "')'");
      return f_nat(e);
    }
    if (w == "natp") {
      next();
      expect(FTok::LParen, "'('");
      FOExpr e = parse_expr();
      expect(FTok::RParen, "')'");
      return f_natp(e);
    }
    if (w == "eq") {
      next();
      expect(FTok::LParen, "'('");
      FOExpr e1 = parse_expr();
      expect(FTok::Comma, "','");
      FOExpr e2 = parse_expr();
      expect(FTok::RParen, "')'");
      return f_leibniz(e1, e2);
    }
    // relation atom or predicate variable
    next();
    if (peek().kind == FTok::LParen) {
      next();
      std::vector<FOExpr> args;
      if (peek().kind != FTok::RParen) {
        args.push_back(parse_expr());
        while (peek().kind == FTok::Comma) {
          next();
          args.push_back(parse_expr());
        }
      }
      expect(FTok::RParen, "')'");
      if (has_rel(w)) {
        if (args.size() != 2) throw ParseError("relation " + w + " takes 2 arguments", tk.pos);
        return f_rel(w, args[0], args[1]);
      }
      return f_predvar(w, std::move(args));
    }
    return f_predvar(w);
  }
};

}  // namespace

Formula parse_formula(const std::string& src) {
  auto toks = flex(src);
  FParser p{toks, 0};
  return p.parse();
}

}  // namespace nsr
