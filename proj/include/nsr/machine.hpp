#pragma once

// Deterministic small-step stateful reduction. A configuration is a closed
// term plus the content of the single memory cell. The call-by-name relation
// searches the leftmost forcing context
//   C ::= rec u0 u1 [.] | [.] u | p1 [.] | p2 [.] | S [.] | set [.] u
//       | case [.] { ... }
// and never reduces under binders. set moves the state to max(argument,
// current); it is the only rule that touches the state. A left-to-right
// call-by-value mode exists for the confluence counterexample.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsr/term.hpp"

namespace nsr {

using State = std::uint64_t;

struct Config {
  Term term;
  State state = 0;
};

enum class StuckReason {
  ApplyNonFunction,
  ProjectNonPair,
  CaseNonInjection,
  SetNonNumeral,
  RecNonNumeral,
  DaggerForced,
  FreeVariable,
};

const char* to_string(StuckReason r);

enum class Outcome { Normal, Stuck, FuelExhausted };
const char* to_string(Outcome o);

struct Trace {
  struct Entry {
    Config after;
    const char* rule;
  };
  Config start;
  std::vector<Entry> steps;
  Outcome outcome = Outcome::Normal;
  Config final;  // last configuration reached
  std::optional<StuckReason> reason;

  // Line-oriented export: one "<state> | <rule> | <term>" line per step,
  // then "RESULT <outcome> <state> <term>".
  std::string to_text() const;
};

constexpr std::uint64_t kDefaultFuel = 100000;

// One step; nullopt when the term is a normal form or stuck.
std::optional<std::pair<Config, const char*>> step(const Config& c);
std::optional<std::pair<Config, const char*>> step_cbv(const Config& c);

Trace reduce(const Config& c, std::uint64_t fuel = kDefaultFuel);
Trace reduce_cbv(const Config& c, std::uint64_t fuel = kDefaultFuel);

// Variant that does not record intermediate steps (same outcome/final).
Trace reduce_quiet(const Config& c, std::uint64_t fuel = kDefaultFuel);

}  // namespace nsr
