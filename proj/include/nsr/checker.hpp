#pragma once

// Bounded, observation-based membership checking for truth values at a
// state. Verdicts are member / nonmember / unknown; membership of an
// implication is probed against a finite generator set and is flagged
// generator-bounded. Atoms are checked up to anti-reduction: if the relation
// fails in the current state, the term is run and the atom re-read in every
// state the trace visits.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsr/individual.hpp"

namespace nsr {

struct CheckResult {
  Tri verdict = Tri::Unknown;
  bool generator_bounded = false;
  std::string note;

  bool is(Tri t) const { return verdict == t; }
};

struct CheckConfig {
  std::uint64_t fuel = kDefaultFuel;
  State range_lo = 0, range_hi = 8;
  // First-order test individuals (quantifier domain).
  std::vector<Individual> individuals;
  // Second-order test predicates, keyed by arity.
  std::map<int, std::vector<PredFamily>> so_pool;
  // Candidate realizers used to probe hypotheses of implications.
  std::vector<Term> generators;

  static CheckConfig defaults();
};

// Built-in oracles and families, resolvable by name in claim files:
//   full, empty, to_zero, to_one  (arity 0)
//   to_numeral                    (arity 1: reduces to the numeral of the argument)
SemPredicate builtin_predicate(const std::string& name);
PredFamily builtin_family(const std::string& name);
bool has_builtin_family(const std::string& name);

// Membership of (t; s) in the truth value of a under rho.
CheckResult member(const Formula& a, const Valuation& rho, const Term& t, State s,
                   const CheckConfig& cfg);

// Universal check over cfg's state range.
struct UniversalReport {
  std::vector<std::pair<State, CheckResult>> per_state;
  CheckResult aggregate;
};
UniversalReport universal(const Formula& a, const Valuation& rho, const Term& t,
                          const CheckConfig& cfg);

// Runs t against the pairing probe \x.\y.(x,y); asserts a pair whose first
// component forces to a numeral without changing the state.
struct Extraction {
  std::uint64_t witness = 0;
  Term payload;
  State end_state = 0;
};
struct ExtractError {
  enum Kind { NonPair, StateChanged, NonNumeralWitness, Fuel, Stuck } kind;
  std::string detail;
};
const char* to_string(ExtractError::Kind k);

// Returns extraction or error.
std::optional<Extraction> extract_witness(const Term& t, State s, const CheckConfig& cfg,
                                          ExtractError* err = nullptr);

// Compares sliced membership against truncated membership for internal a.
struct GlueingReport {
  bool agree = true;
  bool vacuous = false;  // either side unknown
  CheckResult lhs, rhs;
};
GlueingReport glueing_check(const Formula& a, const Valuation& rho, const Term& t,
                            State s, const CheckConfig& cfg);

}  // namespace nsr
