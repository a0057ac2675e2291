// Induced bodies, the body registry and the three completion nogood families.
#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aspdrupe/core.hpp"

namespace aspdrupe {

// Maximum number of minimal bodies a single weight rule may expand to.
inline constexpr std::size_t kDefaultExpansionBudget = 4096;

// Subset-minimal literal sets L with wght(r, L) >= bnd(r), in a fixed
// enumeration order. Throws LimitError when more than `budget` exist.
std::vector<LitSet> minimal_weight_bodies(const Rule& r, std::size_t budget = kDefaultExpansionBudget);

// IB(r, a). Throws ContractError if a is not a head atom of r.
std::vector<LitSet> induced_bodies(const Rule& r, Var a, std::size_t budget = kDefaultExpansionBudget);

// Bod(P) and IB(P, a), plus the mapping between bodies and body variables.
//
// Weight rules whose expansion exceeds the budget contribute no bodies; their
// head atoms are flagged so that callers can refuse support steps for them.
class BodyRegistry {
public:
    explicit BodyRegistry(const Program& p, std::size_t budget = kDefaultExpansionBudget);

    // Gives every body of Bod(P) an id, consecutively from first_id (default
    // num_atoms + 1), in order of first occurrence.
    void assign_sequential_ids(Var first_id = 0);
    // Binds id to body; the body must be in Bod(P) and neither may be bound yet.
    void declare(Var id, const LitSet& body);

    std::size_t num_atoms() const { return ib_.size(); }
    const std::vector<LitSet>& bodies() const { return bodies_; }  // Bod(P)
    bool in_bod(const LitSet& b) const { return index_.count(b) > 0; }
    const std::vector<LitSet>& ib(Var a) const;
    bool ib_complete(Var a) const;
    // True iff {F a, T B} is in the rule family, i.e. B in IB(r, a) for a non-choice r.
    bool is_backward(Var a, const LitSet& b) const;
    const std::vector<std::pair<Var, LitSet>>& backward_pairs() const { return backward_; }
    const std::vector<std::size_t>& unexpanded_rules() const { return unexpanded_; }

    Var id_of(const LitSet& b) const;  // 0 when the body has no id
    bool is_body_id(Var id) const { return by_id_.count(id) > 0; }
    const LitSet& body(Var id) const;
    Var max_id() const { return max_id_; }
    std::vector<Var> body_ids() const;  // ascending

private:
    std::vector<LitSet> bodies_;
    std::unordered_map<LitSet, std::size_t, LitSetHash> index_;
    std::vector<std::vector<LitSet>> ib_;  // indexed by atom - 1
    std::vector<char> ib_complete_;
    std::vector<std::pair<Var, LitSet>> backward_;
    std::unordered_set<std::vector<Lit>, LitSetHash> backward_keys_;
    std::vector<std::size_t> unexpanded_;
    std::unordered_map<LitSet, Var, LitSetHash> ids_;
    std::unordered_map<Var, std::size_t> by_id_;
    Var max_id_ = 0;
};

// Body definition nogoods of B with body variable bid:
// {F B} u IAss(B) and {T B, ~l} for l in IAss(B). The first is omitted when
// B holds complementary literals, as it can never be violated.
std::vector<Nogood> build_bdef(const LitSet& body, Var bid);
std::vector<Nogood> build_bdef(const BodyRegistry& reg, Var bid);

// Rule family: {F a, T B} for each non-choice r, a in H_r, B in IB(r, a).
std::vector<Nogood> build_backward(const BodyRegistry& reg);

// Support nogood {T a} u {F B | B in IB(P, a)}.
Nogood build_forward(const BodyRegistry& reg, Var a);

// Rewrites a normal program so that every atom has at most one inducing body
// or only bodies of size <= 1. Oversized bodies of multi-body atoms are
// replaced by a fresh atom __auxK defined by "__auxK :- B.".
Program normalize_short_body(const Program& p);

}  // namespace aspdrupe
