// Conflict-driven nogood learning for normal, choice and weight programs,
// logging an ASP-DRUPE proof as it runs.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "aspdrupe/completion.hpp"
#include "aspdrupe/core.hpp"
#include "aspdrupe/loops.hpp"
#include "aspdrupe/proof.hpp"

namespace aspdrupe {

enum class Heuristic { LowestTrue, LowestFalse, Random };

struct SolverOptions {
    Heuristic heuristic = Heuristic::LowestTrue;
    std::uint64_t seed = 0;
    // Luby restarts; each restart also forgets old learned nogoods and logs
    // the matching d steps.
    bool restarts = false;
    std::uint64_t restart_unit = 32;
    std::uint64_t max_conflicts = 0;  // 0: unlimited
    double max_seconds = 0;           // 0: unlimited
    // Decisions taken first, in order, while unassigned.
    std::vector<Lit> scripted_decisions;
    // Body ids to use instead of consecutive ids after the atoms.
    std::vector<std::pair<Var, LitSet>> body_numbering;
    // Re-checks every learned nogood for RUP against the solver's nogoods.
    bool verify_learned = false;
    std::size_t expansion_budget = kDefaultExpansionBudget;
};

struct SolveResult {
    enum class Verdict { Consistent, Inconsistent, Unknown } verdict = Verdict::Unknown;
    std::vector<Var> answer_set;  // ascending atom ids
    Proof proof;
    std::vector<Nogood> learned;  // in learning order
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::string message;
};

// Throws UnsupportedError for disjunctive programs, recursive weight rules and
// weight rules beyond the expansion budget. Proof lines are streamed to
// proof_out as they are produced.
SolveResult solve(const Program& p, const SolverOptions& opts = {}, std::ostream* proof_out = nullptr);

// Greatest unfounded set among the non-false atoms that lie on cycles, given
// truth values of atoms and body variables (value(l) as in Engine::value).
std::vector<Var> unfounded_atoms(const DependencyGraph& g, const BodyRegistry& reg,
                                 const std::function<int(Lit)>& value);
// A loop inside an unfounded set U whose external bodies are all refuted
// whenever U's are: a strongly connected component of U with no edge into it
// from the rest of U.
std::vector<Var> source_loop(const DependencyGraph& g, const std::vector<Var>& u);

}  // namespace aspdrupe
