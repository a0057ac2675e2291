#include "aspdrupe/completion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace aspdrupe {

std::vector<LitSet> minimal_weight_bodies(const Rule& r, std::size_t budget) {
    if (r.kind != RuleKind::Weight) throw ContractError("minimal_weight_bodies needs a weight rule");
    std::vector<std::pair<Lit, std::uint64_t>> lits;
    for (const auto& wl : r.weights)
        if (wl.weight > 0) lits.push_back({wl.lit.tv(), wl.weight});
    std::stable_sort(lits.begin(), lits.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    std::vector<LitSet> out;
    if (r.bound == 0) {
        out.emplace_back();
        return out;
    }
    // suffix[i]: total weight of lits[i..]
    std::vector<std::uint64_t> suffix(lits.size() + 1, 0);
    for (std::size_t i = lits.size(); i-- > 0;) suffix[i] = suffix[i + 1] + lits[i].second;

    LitSet cur;
    // Weights are descending, so the last included literal is the lightest and
    // the set is minimal iff dropping it falls below the bound.
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t sum, std::uint64_t last) -> void {
        if (sum >= r.bound) {
            if (sum - last < r.bound) {
                if (out.size() >= budget) throw LimitError("weight rule expands to more than " + std::to_string(budget) + " bodies");
                LitSet s = cur;
                canonicalize(s);
                out.push_back(std::move(s));
            }
            return;
        }
        if (i == lits.size() || sum + suffix[i] < r.bound) return;
        cur.push_back(lits[i].first);
        self(self, i + 1, sum + lits[i].second, lits[i].second);
        cur.pop_back();
        self(self, i + 1, sum, last);
    };
    rec(rec, 0, 0, 0);
    return out;
}

std::vector<LitSet> induced_bodies(const Rule& r, Var a, std::size_t budget) {
    if (std::find(r.head.begin(), r.head.end(), a) == r.head.end())
        throw ContractError("atom " + std::to_string(a) + " is not in the head of the rule");
    switch (r.kind) {
        case RuleKind::Choice:
            return {r.body()};
        case RuleKind::Disjunctive: {
            LitSet b = r.body();
            for (Var h : r.head)
                if (h != a) b.push_back(-h);
            canonicalize(b);
            return {b};
        }
        case RuleKind::Weight:
            return minimal_weight_bodies(r, budget);
    }
    return {};
}

BodyRegistry::BodyRegistry(const Program& p, std::size_t budget)
    : ib_(p.num_atoms()), ib_complete_(p.num_atoms(), 1) {
    const auto& rules = p.rules();
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        const Rule& r = rules[ri];
        std::vector<LitSet> weight_bodies;
        if (r.kind == RuleKind::Weight) {
            try {
                weight_bodies = minimal_weight_bodies(r, budget);
            } catch (const LimitError&) {
                unexpanded_.push_back(ri);
                ib_complete_[static_cast<std::size_t>(r.head.front()) - 1] = 0;
                continue;
            }
        }
        for (Var a : r.head) {
            auto bodies = r.kind == RuleKind::Weight ? weight_bodies : induced_bodies(r, a, budget);
            auto& ib = ib_[static_cast<std::size_t>(a) - 1];
            for (auto& b : bodies) {
                if (!index_.count(b)) {
                    index_.emplace(b, bodies_.size());
                    bodies_.push_back(b);
                }
                if (std::find(ib.begin(), ib.end(), b) == ib.end()) ib.push_back(b);
                if (r.kind != RuleKind::Choice) {
                    std::vector<Lit> key = b;
                    key.insert(key.begin(), a);
                    if (backward_keys_.insert(key).second) backward_.emplace_back(a, b);
                }
            }
        }
    }
}

void BodyRegistry::assign_sequential_ids(Var first_id) {
    Var id = first_id ? first_id : static_cast<Var>(num_atoms()) + 1;
    for (const auto& b : bodies_) {
        if (ids_.count(b)) continue;
        while (by_id_.count(id)) ++id;
        declare(id, b);
        ++id;
    }
}

void BodyRegistry::declare(Var id, const LitSet& body) {
    auto it = index_.find(body);
    if (it == index_.end()) throw ContractError("body " + to_string(body) + " is not in Bod(P)");
    if (id <= static_cast<Var>(num_atoms())) throw ContractError("body id " + std::to_string(id) + " collides with an atom");
    if (by_id_.count(id)) throw ContractError("body id " + std::to_string(id) + " already declared");
    if (ids_.count(body)) throw ContractError("body " + to_string(body) + " already has an id");
    ids_.emplace(body, id);
    by_id_.emplace(id, it->second);
    max_id_ = std::max(max_id_, id);
}

const std::vector<LitSet>& BodyRegistry::ib(Var a) const {
    if (a < 1 || static_cast<std::size_t>(a) > ib_.size()) throw ContractError("unknown atom id " + std::to_string(a));
    return ib_[static_cast<std::size_t>(a) - 1];
}

bool BodyRegistry::ib_complete(Var a) const {
    ib(a);
    return ib_complete_[static_cast<std::size_t>(a) - 1] != 0;
}

bool BodyRegistry::is_backward(Var a, const LitSet& b) const {
    std::vector<Lit> key = b;
    key.insert(key.begin(), a);
    return backward_keys_.count(key) > 0;
}

Var BodyRegistry::id_of(const LitSet& b) const {
    auto it = ids_.find(b);
    return it == ids_.end() ? 0 : it->second;
}

const LitSet& BodyRegistry::body(Var id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw ContractError("unknown body id " + std::to_string(id));
    return bodies_[it->second];
}

std::vector<Var> BodyRegistry::body_ids() const {
    std::vector<Var> out;
    for (const auto& [id, idx] : by_id_) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Nogood> build_bdef(const LitSet& body, Var bid) {
    std::vector<Nogood> out;
    bool clash = false;
    for (std::size_t i = 1; i < body.size(); ++i)
        if (body[i] == -body[i - 1]) clash = true;
    if (!clash) {
        Nogood n(body);
        n.insert(-bid);
        out.push_back(std::move(n));
    }
    for (Lit l : body) out.push_back(Nogood({bid, complement(l)}));
    return out;
}

std::vector<Nogood> build_bdef(const BodyRegistry& reg, Var bid) { return build_bdef(reg.body(bid), bid); }

std::vector<Nogood> build_backward(const BodyRegistry& reg) {
    std::vector<Nogood> out;
    for (const auto& [a, b] : reg.backward_pairs()) {
        Var bid = reg.id_of(b);
        if (!bid) throw ContractError("body " + to_string(b) + " has no id");
        out.push_back(Nogood({-a, bid}));
    }
    return out;
}

Nogood build_forward(const BodyRegistry& reg, Var a) {
    Nogood n({a});
    for (const auto& b : reg.ib(a)) {
        Var bid = reg.id_of(b);
        if (!bid) throw ContractError("body " + to_string(b) + " has no id");
        n.insert(-bid);
    }
    return n;
}

Program normalize_short_body(const Program& p) {
    if (!p.is_normal()) throw ContractError("short-body normalization needs a normal program");
    std::vector<std::vector<LitSet>> ib(p.num_atoms());
    for (const Rule& r : p.rules()) {
        auto& v = ib[static_cast<std::size_t>(r.head.front()) - 1];
        LitSet b = r.body();
        if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
    }
    auto conforms = [&](Var a) {
        const auto& v = ib[static_cast<std::size_t>(a) - 1];
        return v.size() <= 1 || std::all_of(v.begin(), v.end(), [](const LitSet& b) { return b.size() <= 1; });
    };

    Program out;
    for (Var a = 1; static_cast<std::size_t>(a) <= p.num_atoms(); ++a) out.atom(p.name(a));
    std::unordered_map<LitSet, Var, LitSetHash> aux;
    for (const Rule& r : p.rules()) {
        Var h = r.head.front();
        LitSet b = r.body();
        if (conforms(h) || b.size() <= 1) {
            out.add_rule(r);
            continue;
        }
        auto it = aux.find(b);
        if (it == aux.end()) {
            Var x = out.fresh_atom("__aux");
            it = aux.emplace(b, x).first;
            out.add_rule(Rule::normal(x, r.pos, r.neg));
        }
        out.add_rule(Rule::normal(h, {it->second}, {}));
    }
    return out;
}

}  // namespace aspdrupe
