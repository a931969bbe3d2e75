#pragma once

// Derivation checker for the natural-deduction rules: the logical rules, the
// congruence rule, the value-restriction rules, the disjunction rules, and
// (in effect-free mode) the numeric axioms for 0/S/rec. Stateful mode drops
// the numeric axioms and guards second-order instantiation: the substituted
// body must be internal, or propositional (arity 0).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsr/formula.hpp"
#include "nsr/term.hpp"

namespace nsr {

struct Judgment {
  std::vector<std::pair<std::string, Formula>> ctx;  // distinct variables
  Term subject;
  Formula formula;
};

struct Derivation;
using DerivationPtr = std::shared_ptr<Derivation>;

struct Derivation {
  std::string rule;
  Judgment conclusion;
  std::vector<DerivationPtr> premises;
  // Rule-specific witnesses.
  std::optional<FOExpr> witness_expr;          // forall1_e / exists1_i
  std::optional<Formula> witness_formula;      // forall2_e / exists2_i
  std::vector<std::string> witness_params;     // parameters of the witness formula
};

enum class TypingMode { EffectFree, Stateful };

struct TypingReport {
  bool ok = true;
  std::vector<std::string> diagnostics;  // "path: message"
};

// Registered rule names: ax, zero, succ, rec_nat, arrow_i, arrow_e, and_i,
// and_e1, and_e2, or_i1, or_i2, or_e, exists1_i, forall1_e, forall1_i,
// exists2_i, forall2_e, forall2_i, cong, mapsto_i, mapsto_e.
TypingReport check_derivation(const Derivation& d, TypingMode mode);

// One node per line: "RULE <name> [witness-expr={e}] [witness-formula={A}]
// [witness-params={x,y}] :: x: A; y: B |- t : C", children indented two
// spaces below their parent.
DerivationPtr parse_derivation(const std::string& text);
std::string print_derivation(const Derivation& d);

// Best-effort inference for the quantifier-free arrow/and fragment; returns
// a schematic conclusion and its derivation, checkable in effect-free mode.
struct InferResult {
  Formula formula;
  DerivationPtr derivation;
};
std::optional<InferResult> infer_simple(
    const std::vector<std::pair<std::string, Formula>>& ctx, const Term& t);

}  // namespace nsr
