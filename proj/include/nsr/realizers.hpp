#pragma once

// The library of named realizers: the storage operator, the state-probing
// terms (incr, loop+, diagonalization, ideal), transfer/overspill/underspill
// combinators, external induction, the LLPO family, evidenced-frame
// combinators, and the rec-coded arithmetic sugar they lean on.

#include <optional>
#include <string>
#include <vector>

#include "nsr/term.hpp"

namespace nsr {

struct NamedRealizer {
  std::string name;
  Term term;
  std::string claim;   // schematic statement the term is meant to realize
  std::string anchor;  // principle label for reports
};

const std::vector<NamedRealizer>& realizer_library();
std::optional<Term> find_realizer(const std::string& name);
const NamedRealizer* find_realizer_entry(const std::string& name);

// Resolver for "$name" references in term sources.
TermResolver library_resolver();

// Frequently used terms.
Term storage_T();
Term pairing_probe();  // \x. \y. (x, y)

// Evidenced-frame combinators. e_id/e_top/e_fst/e_snd/e_eval are terms;
// composition, pairing and currying are operators on evidence.
Term frame_id();
Term frame_top();
Term frame_fst();
Term frame_snd();
Term frame_eval();
Term frame_compose(const Term& e1, const Term& e2);  // \x. e2 (e1 x)
Term frame_pair(const Term& e1, const Term& e2);     // \x. (e1 x, e2 x)
Term frame_lambda(const Term& e);                    // \x. \y. e (x, y)

}  // namespace nsr
