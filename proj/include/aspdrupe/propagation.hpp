// Unit propagation over nogoods, the RUP test and the weight-rule propagator.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aspdrupe/core.hpp"

namespace aspdrupe {

////////////////////////////////////////////////////////////////////////////////
// Engine
////////////////////////////////////////////////////////////////////////////////

// Two-watched-entry propagation over a mutable nogood store, with decision
// levels. A nogood entry l is "true" when l is in the assignment; a nogood with
// all entries true is violated, one with all but one true forces the
// complement of the remaining entry.
//
// Optionally holds weight constraints  h <-> sum{w_i | l_i true} >= bound,
// propagated by the rules of weight_propagate without explanations.
class Engine {
public:
    using Ref = std::uint32_t;
    static constexpr Ref kDecision = 0xffffffffu;
    static constexpr Ref kExternal = 0xfffffffeu;  // forced by a weight constraint
    static constexpr Ref kWeightBit = 0x80000000u;

    explicit Engine(Var num_vars = 0);

    void ensure_var(Var v);
    Var num_vars() const { return static_cast<Var>(vals_.size()) - 1; }

    // Adds a nogood at the current level. A violated nogood becomes the pending
    // conflict returned by the next propagate(); a unit one forces its literal.
    // Unit and empty nogoods are meant to be added at level 0.
    Ref add(std::span<const Lit> nogood);
    void remove(Ref r);
    bool alive(Ref r) const { return r < store_.size() && store_[r].alive; }
    const std::vector<Lit>& lits(Ref r) const { return store_[r].lits; }
    std::size_t num_stored() const { return store_.size(); }
    // True iff r currently forces some assigned variable.
    bool is_reason(Ref r) const;

    void add_weight(Var head, std::vector<std::pair<Lit, std::uint64_t>> lits, std::uint64_t bound);

    // Value of entry l: 1 if l is assigned, -1 if its complement is, 0 otherwise.
    int value(Lit l) const {
        signed char v = vals_[static_cast<std::size_t>(var_of(l))];
        return l > 0 ? v : -v;
    }
    int level(Var v) const { return levels_[static_cast<std::size_t>(v)]; }
    Ref reason(Var v) const { return reasons_[static_cast<std::size_t>(v)]; }
    int decision_level() const { return static_cast<int>(limits_.size()); }
    const std::vector<Lit>& trail() const { return trail_; }

    void new_level() { limits_.push_back(trail_.size()); }
    void assign(Lit l, Ref reason);
    // Returns the violated nogood (or weight constraint, flagged by kWeightBit).
    std::optional<Ref> propagate();
    void backtrack(int level);

    // Clears the assignment and re-attaches all live nogoods at level 0.
    void rebuild();

    // Entries of a conflict returned by propagate(), as a nogood over the
    // current assignment.
    std::vector<Lit> conflict_lits(Ref r) const;

private:
    struct Stored {
        std::vector<Lit> lits;
        bool alive = true;
    };
    struct Weight {
        Var head;
        std::vector<std::pair<Lit, std::uint64_t>> lits;
        std::uint64_t bound;
    };

    static std::size_t idx(Lit l) { return 2 * static_cast<std::size_t>(var_of(l)) + (l > 0 ? 1 : 0); }
    void attach(Ref r);
    std::optional<Ref> propagate_weight(std::size_t w);

    std::vector<signed char> vals_;
    std::vector<int> levels_;
    std::vector<Ref> reasons_;
    std::vector<Lit> trail_;
    std::vector<std::size_t> limits_;
    std::size_t qhead_ = 0;
    std::vector<Stored> store_;
    std::vector<std::vector<Ref>> watches_;
    std::vector<Ref> units_;
    std::optional<Ref> pending_;
    std::vector<Weight> weights_;
    std::vector<std::vector<std::uint32_t>> wocc_;
    std::vector<Lit> scratch_;
};

////////////////////////////////////////////////////////////////////////////////
// Functional interface
////////////////////////////////////////////////////////////////////////////////

struct PropagationResult {
    enum class Status { Stable, Conflict } status = Status::Stable;
    // Derived unit nogoods {l}, in derivation order (assumption units excluded).
    std::vector<Lit> derived_units;
    // Present iff status == Conflict.
    std::optional<Nogood> conflict;
};

// Fixpoint of delta u {{~l} | l in assumptions}.
PropagationResult unit_propagate(const std::vector<Nogood>& delta, const Assignment& assumptions = {});

// delta u {{~l} | l in nogood} derives the empty nogood by unit propagation.
bool is_rup(const std::vector<Nogood>& delta, const Nogood& nogood);

// A shortest unit-propagation derivation of the empty nogood from
// delta u {{~l} | l in nogood}: the derived unit nogoods it uses, in
// derivation order, and the nogood that is finally reduced to the empty one.
// Among all nogoods the fixpoint reduces to the empty one, the one needing
// the fewest derived units wins, ties going to the later nogood of delta.
// Empty if not RUP.
struct RupTrace {
    std::vector<Lit> units;
    Nogood reduced;
};
std::optional<RupTrace> rup_trace(const std::vector<Nogood>& delta, const Nogood& nogood);

// One application of the weight-rule propagator for r = (a :- w <= {...})
// under A, assuming r is the only rule for a. Each derived signed variable
// carries a reason nogood over atoms.
struct WeightDerivation {
    Lit lit;
    Nogood reason;
};
struct WeightConflict {
    Nogood nogood;
};
using WeightPropagation = std::variant<std::vector<WeightDerivation>, WeightConflict>;
WeightPropagation weight_propagate(const Rule& r, const Assignment& a);

}  // namespace aspdrupe
