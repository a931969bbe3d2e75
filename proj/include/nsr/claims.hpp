#pragma once

// Machine-readable corpus of operational claims and its runner. Claim files
// are line-oriented: blocks start with "CLAIM <id>", followed by fields, and
// end at the next CLAIM or end of file. '#' starts a comment line.
//
//   CLAIM <id>
//   ANCHOR <principle label>
//   KIND reduce | member | universal | extract | note
//   VARS n=0..32; s=0..8        (optional; makes the claim a grid, {n} etc.
//                                substituted textually in the fields below)
//   STRATEGY cbn|cbv            (reduce only; default cbn)
//   STATE <numexpr>             (default 0)
//   RANGE a..b                  (universal only)
//   FUEL <number>               (optional)
//   TERM <term source>          ($name resolves against the realizer library)
//   FORMULA <formula source>    (member/universal)
//   VAL x = <individual literal>        (repeatable)
//   PRED X = <built-in family name>     (repeatable)
//   GENERATORS <term> ; <term> ; ...    (added to the default generator pool)
//   INDIVIDUALS <literal> , <literal>   (replaces the default pool)
//   DEVIATION <free text>               (repeatable)
//   EXPECT ...
//
// EXPECT forms:
//   normal <term|*> state <numexpr>
//   stuck <reason>
//   fuel-exhausted state-min <numexpr>
//   member [generator-bounded] | nonmember | unknown
//   witness <numexpr> state <numexpr>
//   extract-error <kind>
// <numexpr> is a first-order expression over registered functions and
// numbers, e.g. "max(#3, next_odd(#4))".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsr/checker.hpp"

namespace nsr {

struct Claim {
  std::string id;
  std::string anchor;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;  // in file order
  std::vector<std::string> deviations;
  int line = 0;

  std::optional<std::string> field(const std::string& key) const;
  std::vector<std::string> all(const std::string& key) const;
};

std::vector<Claim> parse_claims_file(const std::string& path);
// Directory: every *.claims file, sorted; single file: itself.
std::vector<Claim> load_claims(const std::string& path);

enum class ClaimStatus { Pass, Fail, Unknown, Note };
const char* to_string(ClaimStatus s);

struct ClaimResult {
  std::string id;
  ClaimStatus status = ClaimStatus::Pass;
  std::string detail;
};

struct ClaimReport {
  std::vector<ClaimResult> results;
  int passed = 0, failed = 0, unknown = 0, notes = 0;

  int exit_code() const;  // 0 pass, 1 failures, 2 unknowns only
  std::string to_text() const;
  std::string to_json_lines() const;
};

// A grid claim expands to one instance per variable assignment.
struct ClaimInstance {
  const Claim* claim;
  std::map<std::string, std::uint64_t> bindings;
  std::string id;  // claim id plus bindings
};
std::vector<ClaimInstance> expand_claim(const Claim& c);

ClaimResult run_claim_instance(const ClaimInstance& inst, const CheckConfig& base);
ClaimReport run_claims(const std::vector<Claim>& claims, const CheckConfig& base);
ClaimReport run_claims_path(const std::string& path, const CheckConfig& base);

// The semantic pieces of a member/universal claim instance, for re-checking
// (anti-reduction audits in the acceptance suite).
struct MemberCase {
  Formula formula;
  Valuation rho;
  Term term;
  State state = 0;
  CheckConfig cfg;
};
std::optional<MemberCase> build_member_case(const ClaimInstance& inst,
                                            const CheckConfig& base);

}  // namespace nsr
