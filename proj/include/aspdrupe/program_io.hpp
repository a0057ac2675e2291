// LP-lite reader and writer, atom dictionary output.
//
// LP-lite holds one rule per line; '%' starts a comment.
//   a | b :- c, not d.          disjunctive rule (facts: "a.")
//   :- c, ~d.                   integrity constraint
//   { a ; b } :- c.             choice rule
//   a :- 3 <= { b=1, not c=2 }. weight rule
// A line "#atoms a b c." declares atoms up front. Atoms are numbered 1..n in
// order of first textual occurrence, declarations included. Each
// integrity constraint ":- B." becomes "__botK :- B, not __botK." where the
// generated atoms are numbered after all user atoms.
#pragma once

#include <string>
#include <string_view>

#include "aspdrupe/core.hpp"

namespace aspdrupe {

Program parse_program(std::string_view text);
Program load_program(const std::string& path);

// "<id> <name>" per atom, ascending id.
std::string emit_dictionary(const Program& p);

// Canonical LP-lite text; parse_program(print_program(p)) prints identically.
std::string print_program(const Program& p);
std::string print_rule(const Program& p, const Rule& r);

}  // namespace aspdrupe
