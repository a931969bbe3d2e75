#pragma once

// Individuals are total functions from states to naturals, carried with a
// standardness certificate. Valuations close formulas by assigning
// individuals to first-order variables and truth-value families to predicate
// variables. Truth values are decided by bounded observation oracles
// (SemPredicate); truth-value families apply to individuals pointwise at the
// current state.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nsr/formula.hpp"
#include "nsr/machine.hpp"

namespace nsr {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

// Default probe range for certificate validation. Certificates are trusted
// beyond it; callers re-validate on their own state range.
constexpr State kProbeLo = 0, kProbeHi = 64;

class Individual {
 public:
  struct Certificate {
    enum Kind { Standard, Nonstandard, Unknown } kind = Unknown;
    std::uint64_t value = 0;          // Standard: the constant
    State witness_a = 0, witness_b = 0;  // Nonstandard: states with distinct values
  };

  static Individual constant(std::uint64_t n);
  static Individual diagonal();
  static Individual modk(std::uint64_t k);
  static Individual table_then(std::vector<std::uint64_t> prefix, std::uint64_t tail);
  static Individual add(const Individual& f, const Individual& g);
  static Individual mul(const Individual& f, const Individual& g);

  std::uint64_t operator()(State s) const { return eval_(s); }
  const Certificate& certificate() const { return cert_; }
  const std::string& describe() const { return desc_; }

  // Certificate-driven; Unknown certificates are sampled on [lo, hi] and stay
  // Unknown when constant there (never upgraded).
  Tri is_standard(State lo = kProbeLo, State hi = kProbeHi) const;

  // Individual literal grammar: const n | delta | mod k | table [a,b,...] then n
  // | f + g | f * g.
  static Individual parse(const std::string& src);

  static Individual from_closure(std::function<std::uint64_t(State)> f,
                                 Certificate c, std::string desc);

 private:
  std::function<std::uint64_t(State)> eval_;
  Certificate cert_;
  std::string desc_;
};

// Pointwise evaluation of a first-order expression at a state; all variables
// must be bound to individuals.
struct Valuation;
std::uint64_t eval_expr(const FOExpr& e, const Valuation& rho, State s);
// The whole expression as an individual (with a derived certificate).
Individual expr_individual(const FOExpr& e, const Valuation& rho);

// ---------------------------------------------------------------------------
// Truth-value oracles.

struct CheckConfig;

struct SemPredicate {
  std::string describe;
  // member / nonmember / unknown, observed with bounded fuel.
  std::function<Tri(const Term&, State, const CheckConfig&)> decide;
};

// A truth-value function of arity k: naturals -> SemPredicate.
struct PredFamily {
  std::string name;
  int arity = 0;
  std::function<SemPredicate(const std::vector<std::uint64_t>&)> at;
};

struct Valuation {
  std::map<std::string, Individual> fo;
  std::map<std::string, PredFamily> so;

  Valuation with_fo(const std::string& x, const Individual& f) const;
  Valuation with_so(const std::string& X, const PredFamily& F) const;
};

// F@(f1,...,fk) applied at (t, s): delegate to F at the pointwise values.
Tri apply_predicate(const PredFamily& F, const std::vector<Individual>& fs,
                    const Term& t, State s, const CheckConfig& cfg);

// Slice restriction of an internal formula: every free first-order variable
// is replaced by the constant it takes at s under rho. Throws FormulaError on
// external input.
Formula truncate(const Formula& a, State s, const Valuation& rho);

}  // namespace nsr
