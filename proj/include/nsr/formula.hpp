#pragma once

// Formulas of second-order arithmetic extended with st(e), the value
// restriction Nat(e) |-> A, primitive relation atoms, and disjunction.
// First-order expressions carry named total function symbols with executable
// definitions. Abbreviations are expanded at construction; the AST never
// contains abbreviation nodes.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsr/term.hpp"  // ParseError

namespace nsr {

// ---------------------------------------------------------------------------
// First-order expressions.

enum class ETag { Var, Zero, Succ, Fun };

struct ExprNode;
using FOExpr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ETag tag;
  std::string name;             // Var / Fun
  std::vector<FOExpr> args;     // Succ: one, Fun: per arity
};

FOExpr evar(const std::string& x);
FOExpr ezero();
FOExpr esucc(const FOExpr& e);
FOExpr econst(std::uint64_t n);  // Succ^n(Zero)
FOExpr efun(const std::string& f, std::vector<FOExpr> args);

// Registered arithmetic functions: add, mul, mod, next_odd (mod by zero is
// the identity on the first argument).
using ArithFun = std::function<std::uint64_t(const std::vector<std::uint64_t>&)>;
bool has_fun(const std::string& name);
void register_fun(const std::string& name, int arity, ArithFun f);

std::uint64_t apply_fun(const std::string& name, const std::vector<std::uint64_t>& args);

// Registered relations on naturals: le, lt, req, ge, gt, succ_divides.
using RelFun = std::function<bool(std::uint64_t, std::uint64_t)>;
bool has_rel(const std::string& name);
void register_rel(const std::string& name, RelFun r);
bool eval_rel(const std::string& name, std::uint64_t a, std::uint64_t b);

std::vector<std::string> expr_free_vars(const FOExpr& e);
FOExpr expr_subst(const FOExpr& e, const std::string& x, const FOExpr& v);
std::string print_expr(const FOExpr& e);

// ---------------------------------------------------------------------------
// Formulas.

enum class FTag {
  St,         // st(e)
  NatAtom,    // Nat(e): reduces to the numeral of e (used by the typing axioms)
  PredVar,    // X(e1,...,ek)
  Rel,        // R(e1,e2), R registered
  NatRestr,   // Nat(e) |-> A
  MapsTo,     // A |-> B, general value restriction (representable, not checked)
  Arrow,
  And,
  Or,
  ForallFO,
  ExistsFO,
  ForallSO,
  ExistsSO,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FTag tag;
  std::string name;            // bound variable / predicate variable / relation
  int arity = 0;               // SO binders
  std::vector<FOExpr> exprs;   // St/NatAtom: [e]; PredVar: args; Rel: [e1,e2]; NatRestr: [e]
  Formula a, b;                // subformulas
};

Formula f_st(const FOExpr& e);
Formula f_nat(const FOExpr& e);
Formula f_predvar(const std::string& X, std::vector<FOExpr> args = {});
Formula f_rel(const std::string& R, const FOExpr& e1, const FOExpr& e2);
Formula f_natrestr(const FOExpr& e, const Formula& body);
Formula f_mapsto(const Formula& a, const Formula& b);
Formula f_arrow(const Formula& a, const Formula& b);
Formula f_and(const Formula& a, const Formula& b);
Formula f_or(const Formula& a, const Formula& b);
Formula f_forall(const std::string& x, const Formula& a);
Formula f_exists(const std::string& x, const Formula& a);
Formula f_forall2(const std::string& X, int arity, const Formula& a);
Formula f_exists2(const std::string& X, int arity, const Formula& a);

// Abbreviation expanders. Everything returns abbreviation-free ASTs.
Formula f_top();                                      // exists2 X:0. X
Formula f_bot();                                      // forall2 X:0. X
Formula f_not(const Formula& a);                      // a -> bot
Formula f_leibniz(const FOExpr& e1, const FOExpr& e2);// forall2 Z:1. Z(e1) -> Z(e2)
Formula f_natp(const FOExpr& e);                      // forall2 X:0. (Nat(e) |-> X) -> X
Formula f_fa_n(const std::string& x, const Formula& a);   // forall x. Nat(x) -> A
Formula f_ex_n(const std::string& x, const Formula& a);   // exists x. Nat(x) /\ A
Formula f_fa_bv(const std::string& x, const Formula& a);  // forall x. Nat(x) |-> A
Formula f_ex_bv(const std::string& x, const Formula& a);
Formula f_fa_st(const std::string& x, const Formula& a);  // forall x. st(x) -> A
Formula f_ex_st(const std::string& x, const Formula& a);  // exists x. st(x) /\ A
Formula f_fa_stbv(const std::string& x, const Formula& a);
Formula f_ex_stbv(const std::string& x, const Formula& a);

// st does not occur.
bool internal(const Formula& f);

bool formula_alpha_equal(const Formula& a, const Formula& b);

// Free first-order and predicate variables.
std::vector<std::string> formula_free_fo_vars(const Formula& f);
std::vector<std::string> formula_free_so_vars(const Formula& f);

// Capture-avoiding substitutions.
Formula formula_subst_fo(const Formula& f, const std::string& x, const FOExpr& e);
// A[X(params...) := body]; |params| must equal the arity of X's occurrences.
Formula formula_subst_so(const Formula& f, const std::string& X,
                         const std::vector<std::string>& params, const Formula& body);

// Rewrites (exists _.A) -> B and (exists _.A) |-> B to the universal form, to
// fixpoint. Idempotent; the result is congruent to the input.
Formula congr_normalize(const Formula& f);

struct FormulaError : std::runtime_error {
  explicit FormulaError(const std::string& m) : std::runtime_error(m) {}
};

// Concrete grammar (see README). Abbreviation keywords: bot top not eq natp
// fa_n ex_n fa_bv ex_bv fa_st ex_st fa_stbv ex_stbv.
Formula parse_formula(const std::string& src);
std::string print_formula(const Formula& f);

}  // namespace nsr
