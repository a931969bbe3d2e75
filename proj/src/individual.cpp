#include "nsr/individual.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace nsr {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "member";
    case Tri::No: return "nonmember";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

Individual Individual::constant(std::uint64_t n) {
  Individual f;
  f.eval_ = [n](State) { return n; };
  f.cert_ = {Certificate::Standard, n, 0, 0};
  f.desc_ = "const " + std::to_string(n);
  return f;
}

Individual Individual::diagonal() {
  Individual f;
  f.eval_ = [](State s) { return s; };
  f.cert_ = {Certificate::Nonstandard, 0, 0, 1};
  f.desc_ = "delta";
  return f;
}

Individual Individual::modk(std::uint64_t k) {
  Individual f;
  f.eval_ = [k](State s) { return k == 0 ? s : s % k; };
  if (k == 1)
    f.cert_ = {Certificate::Standard, 0, 0, 0};
  else
    f.cert_ = {Certificate::Nonstandard, 0, 0, 1};
  f.desc_ = "mod " + std::to_string(k);
  return f;
}

Individual Individual::table_then(std::vector<std::uint64_t> prefix, std::uint64_t tail) {
  Individual f;
  auto pfx = std::make_shared<std::vector<std::uint64_t>>(std::move(prefix));
  f.eval_ = [pfx, tail](State s) { return s < pfx->size() ? (*pfx)[s] : tail; };
  f.cert_ = {Certificate::Standard, tail, 0, 0};
  for (std::size_t i = 0; i < pfx->size(); ++i) {
    if ((*pfx)[i] != tail) {
      // any later index evaluates to tail
      f.cert_ = {Certificate::Nonstandard, 0, static_cast<State>(i),
                 static_cast<State>(pfx->size())};
      break;
    }
  }
  f.desc_ = "table [";
  for (std::size_t i = 0; i < pfx->size(); ++i) {
    if (i) f.desc_ += ",";
    f.desc_ += std::to_string((*pfx)[i]);
  }
  f.desc_ += "] then " + std::to_string(tail);
  return f;
}

Individual Individual::from_closure(std::function<std::uint64_t(State)> f,
                                    Certificate c, std::string desc) {
  Individual out;
  out.eval_ = std::move(f);
  out.cert_ = c;
  out.desc_ = std::move(desc);
  return out;
}

namespace {

Individual combine(const Individual& f, const Individual& g, char op) {
  auto ev = [f, g, op](State s) { return op == '+' ? f(s) + g(s) : f(s) * g(s); };
  const auto &cf = f.certificate(), &cg = g.certificate();
  Individual::Certificate c{Individual::Certificate::Unknown, 0, 0, 0};
  if (cf.kind == Individual::Certificate::Standard &&
      cg.kind == Individual::Certificate::Standard) {
    std::uint64_t v = op == '+' ? cf.value + cg.value : cf.value * cg.value;
    c = {Individual::Certificate::Standard, v, 0, 0};
  } else {
    std::uint64_t first = ev(kProbeLo);
    for (State s = kProbeLo + 1; s <= kProbeHi; ++s) {
      if (ev(s) != first) {
        c = {Individual::Certificate::Nonstandard, 0, kProbeLo, s};
        break;
      }
    }
  }
  std::string d = "(" + f.describe() + (op == '+' ? " + " : " * ") + g.describe() + ")";
  return Individual::from_closure(ev, c, std::move(d));
}

}  // namespace

Individual Individual::add(const Individual& f, const Individual& g) {
  return combine(f, g, '+');
}
Individual Individual::mul(const Individual& f, const Individual& g) {
  return combine(f, g, '*');
}

Tri Individual::is_standard(State lo, State hi) const {
  switch (cert_.kind) {
    case Certificate::Standard:
      for (State s = lo; s <= hi; ++s)
        if (eval_(s) != cert_.value) return Tri::No;  // certificate refuted on range
      return Tri::Yes;
    case Certificate::Nonstandard:
      if (eval_(cert_.witness_a) != eval_(cert_.witness_b)) return Tri::No;
      return Tri::Unknown;  // invalid evidence; fall back to honesty
    case Certificate::Unknown: {
      std::uint64_t first = eval_(lo);
      for (State s = lo + 1; s <= hi; ++s)
        if (eval_(s) != first) return Tri::No;
      return Tri::Unknown;  // constant on the range, never upgraded
    }
  }
  return Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Individual literals.

namespace {

struct ILexer {
  const std::string& s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const std::string& w) {
    skip();
    if (s.compare(i, w.size(), w) == 0) {
      i += w.size();
      return true;
    }
    return false;
  }
  std::optional<std::uint64_t> number() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    std::uint64_t n = std::stoull(s.substr(i, j - i));
    i = j;
    return n;
  }
};

Individual parse_ind(ILexer& lx);

Individual parse_ind_atom(ILexer& lx) {
  lx.skip();
  if (lx.eat("(")) {
    Individual f = parse_ind(lx);
    if (!lx.eat(")")) throw FormulaError("expected ')' in individual literal");
    return f;
  }
  if (lx.eat("const")) {
    auto n = lx.number();
    if (!n) throw FormulaError("expected number after 'const'");
    return Individual::constant(*n);
  }
  if (lx.eat("delta")) return Individual::diagonal();
  if (lx.eat("mod")) {
    auto n = lx.number();
    if (!n) throw FormulaError("expected number after 'mod'");
    return Individual::modk(*n);
  }
  if (lx.eat("table")) {
    if (!lx.eat("[")) throw FormulaError("expected '[' after 'table'");
    std::vector<std::uint64_t> prefix;
    if (!lx.eat("]")) {
      for (;;) {
        auto n = lx.number();
        if (!n) throw FormulaError("expected number in table");
        prefix.push_back(*n);
        if (lx.eat("]")) break;
        if (!lx.eat(",")) throw FormulaError("expected ',' or ']' in table");
      }
    }
    if (!lx.eat("then")) throw FormulaError("expected 'then' after table");
    auto n = lx.number();
    if (!n) throw FormulaError("expected number after 'then'");
    return Individual::table_then(std::move(prefix), *n);
  }
  if (auto n = lx.number()) return Individual::constant(*n);
  throw FormulaError("cannot parse individual literal: " + lx.s);
}

Individual parse_ind(ILexer& lx) {
  Individual f = parse_ind_atom(lx);
  for (;;) {
    if (lx.eat("+")) {
      f = Individual::add(f, parse_ind_atom(lx));
    } else if (lx.eat("*")) {
      f = Individual::mul(f, parse_ind_atom(lx));
    } else {
      return f;
    }
  }
}

}  // namespace

Individual Individual::parse(const std::string& src) {
  ILexer lx{src, 0};
  Individual f = parse_ind(lx);
  lx.skip();
  if (lx.i != src.size()) throw FormulaError("trailing input in individual literal");
  return f;
}

// ---------------------------------------------------------------------------

Valuation Valuation::with_fo(const std::string& x, const Individual& f) const {
  Valuation v = *this;
  v.fo.erase(x);
  v.fo.emplace(x, f);
  return v;
}

Valuation Valuation::with_so(const std::string& X, const PredFamily& F) const {
  Valuation v = *this;
  v.so.erase(X);
  v.so.emplace(X, F);
  return v;
}

std::uint64_t eval_expr(const FOExpr& e, const Valuation& rho, State s) {
  switch (e->tag) {
    case ETag::Var: {
      auto it = rho.fo.find(e->name);
      if (it == rho.fo.end())
        throw FormulaError("unbound first-order variable " + e->name);
      return it->second(s);
    }
    case ETag::Zero:
      return 0;
    case ETag::Succ:
      return eval_expr(e->args[0], rho, s) + 1;
    case ETag::Fun: {
      std::vector<std::uint64_t> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) args.push_back(eval_expr(a, rho, s));
      return apply_fun(e->name, args);
    }
  }
  return 0;
}

namespace {

// Certificate derivation for a composed expression: all leaves standard gives
// a constant; otherwise sampling may refute constancy; a constant sample with
// nonstandard leaves stays Unknown.
Individual::Certificate derive_cert(const FOExpr& e, const Valuation& rho,
                                    const std::function<std::uint64_t(State)>& ev) {
  bool all_standard = true;
  std::function<void(const FOExpr&)> scan = [&](const FOExpr& x) {
    if (x->tag == ETag::Var) {
      auto it = rho.fo.find(x->name);
      if (it == rho.fo.end() ||
          it->second.certificate().kind != Individual::Certificate::Standard)
        all_standard = false;
      return;
    }
    for (const auto& a : x->args) scan(a);
  };
  scan(e);
  if (all_standard) return {Individual::Certificate::Standard, ev(0), 0, 0};
  std::uint64_t first = ev(kProbeLo);
  for (State s = kProbeLo + 1; s <= kProbeHi; ++s)
    if (ev(s) != first)
      return {Individual::Certificate::Nonstandard, 0, kProbeLo, s};
  return {Individual::Certificate::Unknown, 0, 0, 0};
}

}  // namespace

Individual expr_individual(const FOExpr& e, const Valuation& rho) {
  auto ev = [e, rho](State s) { return eval_expr(e, rho, s); };
  return Individual::from_closure(ev, derive_cert(e, rho, ev),
                                  "expr " + print_expr(e));
}

Tri apply_predicate(const PredFamily& F, const std::vector<Individual>& fs,
                    const Term& t, State s, const CheckConfig& cfg) {
  if (static_cast<int>(fs.size()) != F.arity)
    throw FormulaError("predicate arity mismatch for " + F.name);
  std::vector<std::uint64_t> vals;
  vals.reserve(fs.size());
  for (const auto& f : fs) vals.push_back(f(s));
  return F.at(vals).decide(t, s, cfg);
}

Formula truncate(const Formula& a, State s, const Valuation& rho) {
  if (!internal(a)) throw FormulaError("truncate: external formula");
  Formula out = a;
  for (const auto& x : formula_free_fo_vars(a)) {
    auto it = rho.fo.find(x);
    if (it == rho.fo.end()) throw FormulaError("truncate: unbound variable " + x);
    out = formula_subst_fo(out, x, econst(it->second(s)));
  }
  return out;
}

}  // namespace nsr
