// Brute-force semantics for small programs and nogood sets.
#pragma once

#include <cstddef>
#include <vector>

#include "aspdrupe/completion.hpp"
#include "aspdrupe/core.hpp"

namespace aspdrupe {

inline constexpr std::size_t kOracleMaxAtoms = 20;
inline constexpr std::size_t kOracleMaxVars = 20;

// All answer sets (ascending atom ids each, sorted), at most `cap` of them
// (0: all). Throws LimitError above kOracleMaxAtoms atoms.
std::vector<std::vector<Var>> enumerate_answer_sets(const Program& p, std::size_t cap = 0);

// M is an answer set of P.
bool is_answer_set(const Program& p, const std::vector<Var>& m);

// Every total assignment over the variables of delta and gamma that violates
// no nogood of delta violates none of gamma. Throws LimitError above
// kOracleMaxVars variables.
bool entails(const std::vector<Nogood>& delta, const std::vector<Nogood>& gamma);

// Total assignments over `vars` (plus any variable of delta) violating no
// nogood of delta, as the sets of true variables.
std::vector<std::vector<Var>> nogood_models(const std::vector<Nogood>& delta, std::vector<Var> vars = {});

// Delta_P with body ids from reg (all three families).
std::vector<Nogood> completion_nogoods(const BodyRegistry& reg);
// Lambda_P: lambda(a, U) for every loop U and a in U. Throws LimitError above
// kOracleMaxAtoms atoms.
std::vector<Nogood> all_loop_nogoods(const Program& p, const BodyRegistry& reg);

}  // namespace aspdrupe
