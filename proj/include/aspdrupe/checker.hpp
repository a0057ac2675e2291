// ASP-DRUPE proof checker.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aspdrupe/completion.hpp"
#include "aspdrupe/core.hpp"
#include "aspdrupe/loops.hpp"
#include "aspdrupe/proof.hpp"
#include "aspdrupe/propagation.hpp"

namespace aspdrupe {

struct CheckOptions {
    // Start from all of the completion instead of the body definitions only;
    // proofs may then omit b/c/s lines. Weight rules beyond the expansion
    // budget take part through the weight propagator.
    bool preloaded_completion = false;
    // Deleting a nogood that is not present is an error.
    bool strict_delete = false;
    std::size_t expansion_budget = kDefaultExpansionBudget;
};

struct CheckResult {
    enum class Outcome { Success, Error, ParseFailure } outcome = Outcome::Error;
    std::size_t step = 0;  // 1-based index of the failing step; 0 for the final test
    std::size_t line = 0;  // source line of the failing step, when known
    std::string reason;

    bool ok() const { return outcome == Outcome::Success; }
};

class Checker {
public:
    explicit Checker(const Program& p, CheckOptions opts = {});

    const BodyRegistry& registry() const { return reg_; }

    // Applies one step. On failure returns false and leaves the reason in error().
    bool step(const ProofStep& s);
    // The empty nogood is an element of the current nogood multiset.
    bool has_empty_nogood() const { return box_count_ > 0; }
    const std::string& error() const { return error_; }

    // The nogood is RUP for the current multiset (the a-step test).
    bool is_rup(const std::vector<Lit>& nogood);

    // Current multiset, one entry per copy in insertion order, in proof ids.
    // Only available when every variable involved has a proof id (not in
    // preloaded mode).
    std::vector<Nogood> nogoods() const;
    // Extension nogoods introduced so far (the set D_i), in proof ids.
    std::vector<Nogood> extension_nogoods() const;

private:
    bool fail(std::string msg);
    Var intern(Var proof_id) const;  // 0 when unknown
    Lit intern_lit(Lit l) const;
    Var fresh_internal();
    void insert(std::vector<Lit> internal_nogood);
    void propagate_top();
    void seed_completion();

    const Program& p_;
    CheckOptions opts_;
    BodyRegistry reg_;
    DependencyGraph graph_;
    Engine engine_;

    std::unordered_map<Var, Var> to_internal_;
    std::unordered_map<Var, Var> to_proof_;
    std::unordered_map<LitSet, Var, LitSetHash> body_var_;      // literal set -> internal var
    std::unordered_map<Var, LitSet> proof_body_;                // proof body id -> literal set
    std::unordered_set<Var> seen_;                              // ids used on earlier lines
    Var next_internal_;

    std::unordered_map<std::vector<Lit>, std::vector<Engine::Ref>, LitSetHash> copies_;
    std::size_t box_count_ = 0;
    bool top_conflict_ = false;
    std::vector<Nogood> extensions_;
    std::string error_;
};

CheckResult check(const Program& p, const Proof& proof, const CheckOptions& opts = {});
// Parses and checks; parse problems give Outcome::ParseFailure.
CheckResult check_text(const Program& p, std::string_view proof_text, const CheckOptions& opts = {});

}  // namespace aspdrupe
