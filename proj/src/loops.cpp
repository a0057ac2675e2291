#include "aspdrupe/loops.hpp"

#include <algorithm>
#include <set>

namespace aspdrupe {

DependencyGraph::DependencyGraph(const Program& p)
    : succ_(p.num_atoms() + 1), pred_(p.num_atoms() + 1), vertex_(p.num_atoms() + 1, 0),
      cyclic_(p.num_atoms() + 1, 0), scc_(p.num_atoms() + 1, -1) {
    std::set<std::pair<Var, Var>> seen;
    for (const Rule& r : p.rules()) {
        for (Var h : r.head) vertex_[static_cast<std::size_t>(h)] = 1;
        for (Var b : r.pos) {
            vertex_[static_cast<std::size_t>(b)] = 1;
            for (Var h : r.head) {
                if (!seen.insert({b, h}).second) continue;
                succ_[static_cast<std::size_t>(b)].push_back(h);
                pred_[static_cast<std::size_t>(h)].push_back(b);
            }
        }
    }

    // Iterative Tarjan.
    std::size_t n = succ_.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Var> stack;
    int counter = 0, comp = 0;
    for (Var root = 1; static_cast<std::size_t>(root) < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        std::vector<std::pair<Var, std::size_t>> work{{root, 0}};
        while (!work.empty()) {
            auto& [v, it] = work.back();
            auto vi = static_cast<std::size_t>(v);
            if (it == 0 && index[vi] < 0) {
                index[vi] = low[vi] = counter++;
                stack.push_back(v);
                on_stack[vi] = 1;
            }
            if (it < succ_[vi].size()) {
                Var w = succ_[vi][it++];
                auto wi = static_cast<std::size_t>(w);
                if (index[wi] < 0) work.push_back({w, 0});
                else if (on_stack[wi]) low[vi] = std::min(low[vi], index[wi]);
                continue;
            }
            if (low[vi] == index[vi]) {
                std::vector<Var> members;
                Var w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    scc_[static_cast<std::size_t>(w)] = comp;
                    members.push_back(w);
                } while (w != v);
                bool cyc = members.size() > 1 || has_edge(v, v);
                for (Var m : members) cyclic_[static_cast<std::size_t>(m)] = cyc ? 1 : 0;
                ++comp;
            }
            Var done = v;
            work.pop_back();
            if (!work.empty()) {
                auto pi = static_cast<std::size_t>(work.back().first);
                low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
            }
        }
    }
}

bool DependencyGraph::has_edge(Var from, Var to) const {
    const auto& s = succ_[static_cast<std::size_t>(from)];
    return std::find(s.begin(), s.end(), to) != s.end();
}

std::vector<std::pair<Var, Var>> DependencyGraph::edges() const {
    std::vector<std::pair<Var, Var>> out;
    for (Var a = 1; static_cast<std::size_t>(a) < succ_.size(); ++a)
        for (Var b : succ_[static_cast<std::size_t>(a)]) out.push_back({a, b});
    std::sort(out.begin(), out.end());
    return out;
}

bool DependencyGraph::is_tight() const {
    return std::none_of(cyclic_.begin(), cyclic_.end(), [](char c) { return c != 0; });
}

bool is_loop(const DependencyGraph& g, const std::vector<Var>& u) {
    if (u.empty()) return false;
    std::set<Var> in(u.begin(), u.end());
    for (Var a : in)
        if (a < 1 || static_cast<std::size_t>(a) > g.num_atoms() || !g.is_vertex(a)) return false;
    if (in.size() == 1) return g.has_edge(*in.begin(), *in.begin());
    auto reaches_all = [&](bool forward) {
        std::set<Var> seen{*in.begin()};
        std::vector<Var> todo{*in.begin()};
        while (!todo.empty()) {
            Var v = todo.back();
            todo.pop_back();
            for (Var w : forward ? g.successors(v) : g.predecessors(v))
                if (in.count(w) && seen.insert(w).second) todo.push_back(w);
        }
        return seen.size() == in.size();
    };
    return reaches_all(true) && reaches_all(false);
}

bool is_loop(const Program& p, const std::vector<Var>& u) { return is_loop(DependencyGraph(p), u); }

std::vector<LitSet> external_bodies(const BodyRegistry& reg, const std::vector<Var>& u) {
    if (u.empty()) throw ContractError("external bodies of an empty set");
    std::set<Var> in(u.begin(), u.end());
    std::vector<LitSet> out;
    for (Var a : in) {
        if (!reg.ib_complete(a)) throw LimitError("atom " + std::to_string(a) + " has an unexpanded weight rule");
        for (const auto& b : reg.ib(a)) {
            bool ext = std::none_of(b.begin(), b.end(), [&](Lit l) { return l > 0 && in.count(l); });
            if (ext && std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
        }
    }
    return out;
}

Nogood loop_nogood(const BodyRegistry& reg, Var a, const std::vector<Var>& u) {
    if (std::find(u.begin(), u.end(), a) == u.end()) throw ContractError("loop nogood atom is not in U");
    Nogood n({a});
    for (const auto& b : external_bodies(reg, u)) {
        Var id = reg.id_of(b);
        if (!id) throw ContractError("external body " + to_string(b) + " has no id");
        n.insert(-id);
    }
    return n;
}

bool is_unfounded_set(const Program& p, const Assignment& a, const std::vector<Var>& u,
                      const std::function<bool(const LitSet&)>& refuted_body) {
    if (u.empty()) throw ContractError("unfounded-set test on an empty set");
    std::set<Var> in(u.begin(), u.end());
    for (Var x : in)
        if (!p.has_atom(x)) throw ContractError("unknown atom id " + std::to_string(x));

    auto blocked = [&](const LitSet& body) {
        for (Lit l : body) {
            if (a.contains(-l)) return true;          // (a)
            if (l > 0 && in.count(l)) return true;    // (b)
        }
        return refuted_body && refuted_body(body);
    };
    for (const Rule& r : p.rules()) {
        bool touches = std::any_of(r.head.begin(), r.head.end(), [&](Var h) { return in.count(h) > 0; });
        if (!touches) continue;
        switch (r.kind) {
            case RuleKind::Disjunctive: {
                bool head_escape = std::any_of(r.head.begin(), r.head.end(),
                                               [&](Var h) { return !in.count(h) && a.contains(h); });  // (c)
                if (!head_escape && !blocked(r.body())) return false;
                break;
            }
            case RuleKind::Choice:
                if (!blocked(r.body())) return false;
                break;
            case RuleKind::Weight:
                for (const auto& b : minimal_weight_bodies(r))
                    if (!blocked(b)) return false;
                break;
        }
    }
    return true;
}

}  // namespace aspdrupe
