#pragma once

// Terms of the extended lambda-calculus: lambda, application, pairs,
// projections, 0/S/rec, get/set, injections/case, plus two kinds of inert
// constants (dagger and named probe atoms). Immutable shared trees; all
// operations are pure.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsr {

enum class Tag {
  Var,
  Zero,
  Succ,
  Rec,
  Get,
  Set,
  Dagger,
  Atom,  // inert named constant used by tests and observation probes
  Abs,
  App,
  Pair,
  Proj1,
  Proj2,
  Inl,
  Inr,
  Case,
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;
using NameSet = std::shared_ptr<const std::vector<std::string>>;  // sorted, unique

struct TermNode {
  Tag tag;
  // Var/Atom: name. Abs: name = binder. Case: name = left binder, name2 = right binder.
  std::string name;
  std::string name2;
  // Abs: a = body. App: a = fun, b = arg. Pair: a, b. Proj/Inl/Inr: a.
  // Case: a = scrutinee, b = left body, c = right body.
  Term a, b, c;
  NameSet fvs;  // free variables, cached at construction
};

// Constructors.
Term var(const std::string& x);
Term zero();
Term succ();
Term rec();
Term get();
Term set();
Term dagger();
Term atom(const std::string& name);
Term lam(const std::string& x, const Term& body);
Term app(const Term& f, const Term& a);
Term app(const Term& f, const Term& a, const Term& b);
Term app(const Term& f, const Term& a, const Term& b, const Term& c);
Term pair(const Term& a, const Term& b);
Term proj1(const Term& t);
Term proj2(const Term& t);
Term inl(const Term& t);
Term inr(const Term& t);
Term case_of(const Term& scrut, const std::string& xl, const Term& left,
             const std::string& xr, const Term& right);

// S^n 0. Always a value.
Term numeral(std::uint64_t n);
// Zero or a Succ-chain of values ending in Zero.
std::optional<std::uint64_t> as_numeral(const Term& t);

const std::vector<std::string>& free_vars(const Term& t);
bool is_closed(const Term& t);

// The value grammar: 0, S V, lambda, (V1,V2), inl V, inr V, dagger, atoms.
bool is_value(const Term& t);

// Capture-avoiding substitution of u for every free x in t. Binders are
// renamed with a global counter when they would capture.
Term substitute(const Term& t, const std::string& x, const Term& u);

// Structural equality up to renaming of bound variables; free variables and
// atom names must match exactly.
bool alpha_equal(const Term& a, const Term& b);

// Concrete syntax (see README):
//   t ::= ident | "0" | "S" | "rec" | "get" | "set" | "dagger" | "@" ident
//       | "\" ident "." t | t t | "(" t "," t ")" | "p1" t | "p2" t
//       | "inl" t | "inr" t
//       | "case" t "{" "inl" ident "->" t "|" "inr" ident "->" t "}"
//       | "#" digits | "(" t ")" | "$" ident       ($: resolver splice)
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at offset " + std::to_string(position)),
        pos(position) {}
  std::size_t pos;
};

// Optional resolver for "$name" references (used by the claim corpus and the
// CLI to splice library realizers into source text).
using TermResolver = std::function<std::optional<Term>(const std::string&)>;

Term parse_term(const std::string& src, const TermResolver& resolver = nullptr);
std::string print_term(const Term& t);

// Fresh-name counter used by renaming; reset only by tests that need
// deterministic traces from a known state.
void reset_fresh_counter();

}  // namespace nsr
