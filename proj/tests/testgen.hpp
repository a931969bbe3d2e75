#pragma once

// Deterministic generators for property-style tests: a small xorshift PRNG,
// random terms, and random internal formulas over a fixed variable stock.

#include <cstdint>
#include <string>
#include <vector>

#include "nsr/formula.hpp"
#include "nsr/term.hpp"

namespace nsr::testgen {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

// Closed random term, binder depth-aware. Sizes stay small on purpose.
inline Term random_term(Rng& rng, int depth, std::vector<std::string>& scope) {
  if (depth <= 0 || rng.below(4) == 0) {
    switch (rng.below(scope.empty() ? 5 : 6)) {
      case 0: return zero();
      case 1: return numeral(rng.below(4));
      case 2: return dagger();
      case 3: return atom("a" + std::to_string(rng.below(3)));
      case 4: {
        std::string x = "x" + std::to_string(scope.size());
        scope.push_back(x);
        Term body = random_term(rng, 0, scope);
        scope.pop_back();
        return lam(x, body);
      }
      default: return var(scope[rng.below(scope.size())]);
    }
  }
  switch (rng.below(9)) {
    case 0: {
      std::string x = "x" + std::to_string(scope.size());
      scope.push_back(x);
      Term body = random_term(rng, depth - 1, scope);
      scope.pop_back();
      return lam(x, body);
    }
    case 1:
      return app(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope));
    case 2:
      return pair(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope));
    case 3: return proj1(random_term(rng, depth - 1, scope));
    case 4: return proj2(random_term(rng, depth - 1, scope));
    case 5: return inl(random_term(rng, depth - 1, scope));
    case 6: return inr(random_term(rng, depth - 1, scope));
    case 7: {
      std::string xl = "l" + std::to_string(scope.size());
      std::string xr = "r" + std::to_string(scope.size());
      Term sc = random_term(rng, depth - 1, scope);
      scope.push_back(xl);
      Term left = random_term(rng, depth - 1, scope);
      scope.pop_back();
      scope.push_back(xr);
      Term right = random_term(rng, depth - 1, scope);
      scope.pop_back();
      return case_of(sc, xl, left, xr, right);
    }
    default:
      return app(succ(), random_term(rng, depth - 1, scope));
  }
}

inline Term random_closed_term(Rng& rng, int depth = 4) {
  std::vector<std::string> scope;
  return random_term(rng, depth, scope);
}

// Pure term whose normal form is a numeral: arithmetic over rec/beta/proj.
inline Term numeric_term(Rng& rng, int depth) {
  Term add = lam("x", lam("y", app(rec(), var("x"),
                                   lam("p", lam("r", app(succ(), var("r")))),
                                   var("y"))));
  if (depth <= 0 || rng.below(3) == 0) return numeral(rng.below(5));
  switch (rng.below(5)) {
    case 0:
      return app(add, numeric_term(rng, depth - 1), numeric_term(rng, depth - 1));
    case 1:
      return app(lam("z", numeric_term(rng, depth - 1)), numeric_term(rng, depth - 1));
    case 2: {
      Term inner = numeric_term(rng, depth - 1);
      return app(lam("z", app(add, var("z"), numeric_term(rng, depth - 1))), inner);
    }
    case 3:
      return proj1(pair(numeric_term(rng, depth - 1), numeric_term(rng, depth - 1)));
    default:
      return case_of(rng.below(2) ? inl(numeric_term(rng, depth - 1))
                                  : inr(numeric_term(rng, depth - 1)),
                     "a", var("a"), "b", app(succ(), var("b")));
  }
}

// Internal formulas over variables x, y (closed by a valuation), built from
// relation atoms, /\, ->, Nat-restriction and first-order quantifiers.
inline FOExpr random_expr(Rng& rng, const std::vector<std::string>& fvars, int depth) {
  if (depth <= 0 || rng.below(3) == 0) {
    if (!fvars.empty() && rng.below(2) == 0)
      return evar(fvars[rng.below(fvars.size())]);
    return econst(rng.below(6));
  }
  switch (rng.below(3)) {
    case 0: return esucc(random_expr(rng, fvars, depth - 1));
    case 1:
      return efun("add", {random_expr(rng, fvars, depth - 1),
                          random_expr(rng, fvars, depth - 1)});
    default:
      return efun("mod", {random_expr(rng, fvars, depth - 1), econst(2 + rng.below(3))});
  }
}

inline Formula random_internal_formula(Rng& rng, std::vector<std::string> fvars,
                                       int depth) {
  static const char* rels[] = {"le", "lt", "req", "ge"};
  if (depth <= 0 || rng.below(3) == 0) {
    return f_rel(rels[rng.below(4)], random_expr(rng, fvars, 1),
                 random_expr(rng, fvars, 1));
  }
  switch (rng.below(5)) {
    case 0:
      return f_and(random_internal_formula(rng, fvars, depth - 1),
                   random_internal_formula(rng, fvars, depth - 1));
    case 1:
      return f_arrow(random_internal_formula(rng, fvars, depth - 1),
                     random_internal_formula(rng, fvars, depth - 1));
    case 2: {
      std::string q = "q" + std::to_string(fvars.size());
      fvars.push_back(q);
      return f_forall(q, random_internal_formula(rng, fvars, depth - 1));
    }
    case 3: {
      std::string q = "q" + std::to_string(fvars.size());
      fvars.push_back(q);
      return f_exists(q, random_internal_formula(rng, fvars, depth - 1));
    }
    default: {
      std::string q = "q" + std::to_string(fvars.size());
      fvars.push_back(q);
      return f_forall(q, f_natrestr(evar(q),
                                    random_internal_formula(rng, fvars, depth - 1)));
    }
  }
}

}  // namespace nsr::testgen
