#include "nsr/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

namespace nsr {

namespace {

const NameSet& empty_names() {
  static const NameSet e = std::make_shared<std::vector<std::string>>();
  return e;
}

NameSet merge_names(const NameSet& a, const NameSet& b) {
  if (a->empty()) return b;
  if (b->empty()) return a;
  auto out = std::make_shared<std::vector<std::string>>();
  out->reserve(a->size() + b->size());
  std::set_union(a->begin(), a->end(), b->begin(), b->end(),
                 std::back_inserter(*out));
  return out;
}

NameSet remove_name(const NameSet& a, const std::string& x) {
  if (!std::binary_search(a->begin(), a->end(), x)) return a;
  auto out = std::make_shared<std::vector<std::string>>();
  out->reserve(a->size() - 1);
  for (const auto& n : *a)
    if (n != x) out->push_back(n);
  return out;
}

Term make(TermNode n) { return std::make_shared<TermNode>(std::move(n)); }

std::atomic<std::uint64_t> fresh_counter{0};

bool name_in(const NameSet& s, const std::string& x) {
  return std::binary_search(s->begin(), s->end(), x);
}

std::string fresh_like(const std::string& base, const NameSet& avoid1,
                       const NameSet& avoid2) {
  for (;;) {
    std::string cand = base + "_" + std::to_string(++fresh_counter);
    if (!name_in(avoid1, cand) && !name_in(avoid2, cand)) return cand;
  }
}

}  // namespace

void reset_fresh_counter() { fresh_counter = 0; }

Term var(const std::string& x) {
  auto fv = std::make_shared<std::vector<std::string>>(1, x);
  return make({Tag::Var, x, "", nullptr, nullptr, nullptr, fv});
}

Term zero() {
  static const Term t = make({Tag::Zero, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term succ() {
  static const Term t = make({Tag::Succ, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term rec() {
  static const Term t = make({Tag::Rec, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term get() {
  static const Term t = make({Tag::Get, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term set() {
  static const Term t = make({Tag::Set, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term dagger() {
  static const Term t = make({Tag::Dagger, "", "", nullptr, nullptr, nullptr, empty_names()});
  return t;
}
Term atom(const std::string& name) {
  return make({Tag::Atom, name, "", nullptr, nullptr, nullptr, empty_names()});
}

Term lam(const std::string& x, const Term& body) {
  return make({Tag::Abs, x, "", body, nullptr, nullptr, remove_name(body->fvs, x)});
}

Term app(const Term& f, const Term& a) {
  return make({Tag::App, "", "", f, a, nullptr, merge_names(f->fvs, a->fvs)});
}
Term app(const Term& f, const Term& a, const Term& b) { return app(app(f, a), b); }
Term app(const Term& f, const Term& a, const Term& b, const Term& c) {
  return app(app(app(f, a), b), c);
}

Term pair(const Term& a, const Term& b) {
  return make({Tag::Pair, "", "", a, b, nullptr, merge_names(a->fvs, b->fvs)});
}
Term proj1(const Term& t) {
  return make({Tag::Proj1, "", "", t, nullptr, nullptr, t->fvs});
}
Term proj2(const Term& t) {
  return make({Tag::Proj2, "", "", t, nullptr, nullptr, t->fvs});
}
Term inl(const Term& t) {
  return make({Tag::Inl, "", "", t, nullptr, nullptr, t->fvs});
}
Term inr(const Term& t) {
  return make({Tag::Inr, "", "", t, nullptr, nullptr, t->fvs});
}

Term case_of(const Term& scrut, const std::string& xl, const Term& left,
             const std::string& xr, const Term& right) {
  NameSet fv = merge_names(remove_name(left->fvs, xl), remove_name(right->fvs, xr));
  fv = merge_names(scrut->fvs, fv);
  return make({Tag::Case, xl, xr, scrut, left, right, fv});
}

Term numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = app(succ(), t);
  return t;
}

std::optional<std::uint64_t> as_numeral(const Term& t) {
  std::uint64_t n = 0;
  const TermNode* p = t.get();
  for (;;) {
    if (p->tag == Tag::Zero) return n;
    if (p->tag == Tag::App && p->a->tag == Tag::Succ) {
      ++n;
      p = p->b.get();
      continue;
    }
    return std::nullopt;
  }
}

const std::vector<std::string>& free_vars(const Term& t) { return *t->fvs; }
bool is_closed(const Term& t) { return t->fvs->empty(); }

bool is_value(const Term& t) {
  switch (t->tag) {
    case Tag::Zero:
    case Tag::Abs:
    case Tag::Dagger:
    case Tag::Atom:
      return true;
    case Tag::App:
      return t->a->tag == Tag::Succ && is_value(t->b);
    case Tag::Pair:
      return is_value(t->a) && is_value(t->b);
    case Tag::Inl:
    case Tag::Inr:
      return is_value(t->a);
    default:
      return false;
  }
}

Term substitute(const Term& t, const std::string& x, const Term& u) {
  if (!name_in(t->fvs, x)) return t;
  switch (t->tag) {
    case Tag::Var:
      return u;  // name == x, otherwise x would not be free
    case Tag::Abs: {
      std::string b = t->name;
      Term body = t->a;
      if (name_in(u->fvs, b)) {
        std::string b2 = fresh_like(b, u->fvs, body->fvs);
        body = substitute(body, b, var(b2));
        b = b2;
      }
      return lam(b, substitute(body, x, u));
    }
    case Tag::App:
      return app(substitute(t->a, x, u), substitute(t->b, x, u));
    case Tag::Pair:
      return pair(substitute(t->a, x, u), substitute(t->b, x, u));
    case Tag::Proj1:
      return proj1(substitute(t->a, x, u));
    case Tag::Proj2:
      return proj2(substitute(t->a, x, u));
    case Tag::Inl:
      return inl(substitute(t->a, x, u));
    case Tag::Inr:
      return inr(substitute(t->a, x, u));
    case Tag::Case: {
      Term sc = substitute(t->a, x, u);
      std::string xl = t->name, xr = t->name2;
      Term left = t->b, right = t->c;
      if (xl != x) {
        if (name_in(left->fvs, x) && name_in(u->fvs, xl)) {
          std::string xl2 = fresh_like(xl, u->fvs, left->fvs);
          left = substitute(left, xl, var(xl2));
          xl = xl2;
        }
        if (name_in(left->fvs, x)) left = substitute(left, x, u);
      }
      if (xr != x) {
        if (name_in(right->fvs, x) && name_in(u->fvs, xr)) {
          std::string xr2 = fresh_like(xr, u->fvs, right->fvs);
          right = substitute(right, xr, var(xr2));
          xr = xr2;
        }
        if (name_in(right->fvs, x)) right = substitute(right, x, u);
      }
      return case_of(sc, xl, left, xr, right);
    }
    default:
      return t;  // constants have no free variables
  }
}

// ---------------------------------------------------------------------------
// Alpha-equality with an explicit worklist (numerals can be very deep).

namespace {

struct BindPair {
  std::string l, r;
  std::shared_ptr<const BindPair> next;
};
using BindEnv = std::shared_ptr<const BindPair>;

bool var_match(const BindEnv& env, const std::string& l, const std::string& r) {
  for (const BindPair* p = env.get(); p; p = p->next.get()) {
    bool hl = p->l == l, hr = p->r == r;
    if (hl || hr) return hl && hr;
  }
  return l == r;  // both free
}

}  // namespace

bool alpha_equal(const Term& ta, const Term& tb) {
  struct Item {
    Term a, b;
    BindEnv env;
  };
  std::vector<Item> work{{ta, tb, nullptr}};
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    const Term &a = it.a, &b = it.b;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
      case Tag::Var:
        if (!var_match(it.env, a->name, b->name)) return false;
        break;
      case Tag::Atom:
        if (a->name != b->name) return false;
        break;
      case Tag::Zero:
      case Tag::Succ:
      case Tag::Rec:
      case Tag::Get:
      case Tag::Set:
      case Tag::Dagger:
        break;
      case Tag::Abs: {
        auto env2 = std::make_shared<BindPair>(BindPair{a->name, b->name, it.env});
        work.push_back({a->a, b->a, env2});
        break;
      }
      case Tag::App:
      case Tag::Pair:
        work.push_back({a->a, b->a, it.env});
        work.push_back({a->b, b->b, it.env});
        break;
      case Tag::Proj1:
      case Tag::Proj2:
      case Tag::Inl:
      case Tag::Inr:
        work.push_back({a->a, b->a, it.env});
        break;
      case Tag::Case: {
        work.push_back({a->a, b->a, it.env});
        auto envl = std::make_shared<BindPair>(BindPair{a->name, b->name, it.env});
        auto envr = std::make_shared<BindPair>(BindPair{a->name2, b->name2, it.env});
        work.push_back({a->b, b->b, envl});
        work.push_back({a->c, b->c, envr});
        break;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printer.

namespace {

void print_rec(const Term& t, std::string& out, bool atom_pos);

void print_app(const Term& t, std::string& out) {
  // left spine, flattened
  if (t->tag == Tag::App) {
    print_app(t->a, out);
    out += ' ';
    print_rec(t->b, out, /*atom_pos=*/true);
  } else {
    print_rec(t, out, /*atom_pos=*/true);
  }
}

void print_rec(const Term& t, std::string& out, bool atom_pos) {
  if (auto n = as_numeral(t)) {
    out += (*n == 0) ? "0" : "#" + std::to_string(*n);
    return;
  }
  switch (t->tag) {
    case Tag::Var:
      out += t->name;
      return;
    case Tag::Zero:
      out += "0";
      return;
    case Tag::Succ:
      out += "S";
      return;
    case Tag::Rec:
      out += "rec";
      return;
    case Tag::Get:
      out += "get";
      return;
    case Tag::Set:
      out += "set";
      return;
    case Tag::Dagger:
      out += "dagger";
      return;
    case Tag::Atom:
      out += "@" + t->name;
      return;
    case Tag::Pair:
      out += "(";
      print_rec(t->a, out, false);
      out += ", ";
      print_rec(t->b, out, false);
      out += ")";
      return;
    default:
      break;
  }
  if (atom_pos) {
    out += "(";
    print_rec(t, out, false);
    out += ")";
    return;
  }
  switch (t->tag) {
    case Tag::Abs:
      out += "\\" + t->name + ". ";
      print_rec(t->a, out, false);
      return;
    case Tag::App:
      print_app(t, out);
      return;
    case Tag::Proj1:
      out += "p1 ";
      print_rec(t->a, out, true);
      return;
    case Tag::Proj2:
      out += "p2 ";
      print_rec(t->a, out, true);
      return;
    case Tag::Inl:
      out += "inl ";
      print_rec(t->a, out, true);
      return;
    case Tag::Inr:
      out += "inr ";
      print_rec(t->a, out, true);
      return;
    case Tag::Case:
      out += "case ";
      print_rec(t->a, out, true);
      out += " { inl " + t->name + " -> ";
      print_rec(t->b, out, false);
      out += " | inr " + t->name2 + " -> ";
      print_rec(t->c, out, false);
      out += " }";
      return;
    default:
      out += "?";
      return;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_rec(t, out, false);
  return out;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over a token stream.

namespace {

struct Token {
  enum Kind { Ident, Keyword, Hash, LParen, RParen, Comma, Lambda, Dot, LBrace,
              RBrace, Arrow, Bar, AtName, DollarName, End } kind;
  std::string text;
  std::uint64_t num = 0;
  std::size_t pos = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, std::size_t p) {
    out.push_back({k, std::move(t), 0, p});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t p = i;
    if (c == '(') { push(Token::LParen, "(", p); ++i; continue; }
    if (c == ')') { push(Token::RParen, ")", p); ++i; continue; }
    if (c == ',') { push(Token::Comma, ",", p); ++i; continue; }
    if (c == '\\') { push(Token::Lambda, "\\", p); ++i; continue; }
    if (c == '.') { push(Token::Dot, ".", p); ++i; continue; }
    if (c == '{') { push(Token::LBrace, "{", p); ++i; continue; }
    if (c == '}') { push(Token::RBrace, "}", p); ++i; continue; }
    if (c == '|') { push(Token::Bar, "|", p); ++i; continue; }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      push(Token::Arrow, "->", p);
      i += 2;
      continue;
    }
    if (c == '#') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw ParseError("expected digits after '#'", p);
      Token t{Token::Hash, s.substr(i, j - i), 0, p};
      t.num = std::stoull(t.text);
      out.push_back(t);
      i = j;
      continue;
    }
    if (c == '@' || c == '$') {
      ++i;
      std::size_t j = i;
      if (j >= s.size() || !ident_start(s[j]))
        throw ParseError(std::string("expected identifier after '") + c + "'", p);
      while (j < s.size() && ident_char(s[j])) ++j;
      push(c == '@' ? Token::AtName : Token::DollarName, s.substr(i, j - i), p);
      i = j;
      continue;
    }
    if (c == '0' && (i + 1 >= s.size() || !ident_char(s[i + 1]))) {
      push(Token::Keyword, "0", p);
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string w = s.substr(i, j - i);
      static const char* kws[] = {"S", "rec", "get", "set", "dagger", "p1", "p2",
                                  "inl", "inr", "case"};
      bool kw = false;
      for (auto* k : kws) kw = kw || (w == k);
      push(kw ? Token::Keyword : Token::Ident, w, p);
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", p);
  }
  out.push_back({Token::End, "", 0, s.size()});
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t i = 0;
  const TermResolver& resolver;

  const Token& peek() const { return toks[i]; }
  const Token& next() { return toks[i++]; }
  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i;
  }

  Term parse_full() {
    Term t = parse_term_lvl();
    if (peek().kind != Token::End) throw ParseError("trailing input", peek().pos);
    return t;
  }

  Term parse_term_lvl() {
    if (peek().kind == Token::Lambda) {
      next();
      if (peek().kind != Token::Ident)
        throw ParseError("expected binder after '\\'", peek().pos);
      std::string x = next().text;
      expect(Token::Dot, "'.'");
      return lam(x, parse_term_lvl());
    }
    Term t = parse_unary();
    for (;;) {
      switch (peek().kind) {
        case Token::Lambda:
          throw ParseError("lambda argument must be parenthesized", peek().pos);
        case Token::Ident:
        case Token::Keyword:
        case Token::Hash:
        case Token::LParen:
        case Token::AtName:
        case Token::DollarName:
          t = app(t, parse_atom());
          break;
        default:
          return t;
      }
    }
  }

  Term parse_unary() {
    const Token& tk = peek();
    if (tk.kind == Token::Keyword) {
      if (tk.text == "p1") { next(); return proj1(parse_atom()); }
      if (tk.text == "p2") { next(); return proj2(parse_atom()); }
      if (tk.text == "inl") { next(); return inl(parse_atom()); }
      if (tk.text == "inr") { next(); return inr(parse_atom()); }
      if (tk.text == "case") {
        next();
        Term sc = parse_term_lvl();
        expect(Token::LBrace, "'{'");
        if (peek().kind != Token::Keyword || peek().text != "inl")
          throw ParseError("expected 'inl' branch", peek().pos);
        next();
        if (peek().kind != Token::Ident) throw ParseError("expected binder", peek().pos);
        std::string xl = next().text;
        expect(Token::Arrow, "'->'");
        Term left = parse_term_lvl();
        expect(Token::Bar, "'|'");
        if (peek().kind != Token::Keyword || peek().text != "inr")
          throw ParseError("expected 'inr' branch", peek().pos);
        next();
        if (peek().kind != Token::Ident) throw ParseError("expected binder", peek().pos);
        std::string xr = next().text;
        expect(Token::Arrow, "'->'");
        Term right = parse_term_lvl();
        expect(Token::RBrace, "'}'");
        return case_of(sc, xl, left, xr, right);
      }
    }
    return parse_atom();
  }

  Term parse_atom() {
    const Token tk = peek();
    switch (tk.kind) {
      case Token::Ident:
        next();
        return var(tk.text);
      case Token::Keyword:
        next();
        if (tk.text == "0") return zero();
        if (tk.text == "S") return succ();
        if (tk.text == "rec") return rec();
        if (tk.text == "get") return get();
        if (tk.text == "set") return set();
        if (tk.text == "dagger") return dagger();
        throw ParseError("'" + tk.text + "' cannot stand alone", tk.pos);
      case Token::Hash:
        next();
        return numeral(tk.num);
      case Token::AtName:
        next();
        return atom(tk.text);
      case Token::DollarName: {
        next();
        if (!resolver) throw ParseError("no resolver for '$" + tk.text + "'", tk.pos);
        auto r = resolver(tk.text);
        if (!r) throw ParseError("unknown reference '$" + tk.text + "'", tk.pos);
        return *r;
      }
      case Token::LParen: {
        next();
        Term t = parse_term_lvl();
        if (peek().kind == Token::Comma) {
          next();
          Term u = parse_term_lvl();
          expect(Token::RParen, "')'");
          return pair(t, u);
        }
        expect(Token::RParen, "')'");
        return t;
      }
      default:
        throw ParseError("expected a term", tk.pos);
    }
  }
};

}  // namespace

Term parse_term(const std::string& src, const TermResolver& resolver) {
  auto toks = lex(src);
  Parser p{toks, 0, resolver};
  return p.parse_full();
}

}  // namespace nsr
