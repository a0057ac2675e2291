// Positive dependency graph, loops, external bodies and unfounded sets.
#pragma once

#include <functional>
#include <vector>

#include "aspdrupe/completion.hpp"
#include "aspdrupe/core.hpp"

namespace aspdrupe {

class DependencyGraph {
public:
    explicit DependencyGraph(const Program& p);

    // Edge (a, b) for a in B+_r, b in H_r. Weighted positive literals count as B+.
    bool has_edge(Var from, Var to) const;
    const std::vector<Var>& successors(Var a) const { return succ_[static_cast<std::size_t>(a)]; }
    const std::vector<Var>& predecessors(Var a) const { return pred_[static_cast<std::size_t>(a)]; }
    bool is_vertex(Var a) const { return vertex_[static_cast<std::size_t>(a)] != 0; }
    std::vector<std::pair<Var, Var>> edges() const;
    std::size_t num_atoms() const { return succ_.size() - 1; }

    // Strongly connected components (Tarjan); component id per atom, 0-based.
    const std::vector<int>& scc() const { return scc_; }
    // Atoms lying on some cycle.
    bool on_cycle(Var a) const { return cyclic_[static_cast<std::size_t>(a)] != 0; }
    bool is_tight() const;

private:
    std::vector<std::vector<Var>> succ_, pred_;
    std::vector<char> vertex_, cyclic_;
    std::vector<int> scc_;
};

// The subgraph induced by U is strongly connected and has at least one edge.
bool is_loop(const DependencyGraph& g, const std::vector<Var>& u);
bool is_loop(const Program& p, const std::vector<Var>& u);

// EB(P, U): bodies in IB(P, a), a in U, with no positive literal in U.
// Throws LimitError if some a in U has an unexpanded weight rule.
std::vector<LitSet> external_bodies(const BodyRegistry& reg, const std::vector<Var>& u);

// lambda(a, U) = {T a} u {F B | B in EB(P, U)}, with body ids from reg.
Nogood loop_nogood(const BodyRegistry& reg, Var a, const std::vector<Var>& u);

// U is unfounded for A: every rule r with H_r n U != {} has (a) a body literal
// contradicted by A, (b) a positive body atom in U, or (c) a head atom outside
// U that is true in A. Choice rules are read per head atom without (c); weight
// rules through their minimal bodies. `refuted_body`, when given, reports
// whether A refutes a whole literal set through a body variable.
bool is_unfounded_set(const Program& p, const Assignment& a, const std::vector<Var>& u,
                      const std::function<bool(const LitSet&)>& refuted_body = {});

}  // namespace aspdrupe
