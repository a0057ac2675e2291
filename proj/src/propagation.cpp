#include "aspdrupe/propagation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aspdrupe {

namespace {

// Outcome of evaluating  h <-> sum{w | l true} >= bound  under a partial
// assignment, following cases (i)-(iv) of the weight propagator.
struct WeightStep {
    bool conflict = false;
    std::vector<Lit> forced;  // signed variables to assign
};

template <class ValueFn>
WeightStep eval_weight(Lit head, const std::vector<std::pair<Lit, std::uint64_t>>& lits, std::uint64_t bound,
                       ValueFn value) {
    WeightStep out;
    std::uint64_t t = 0, u = 0;
    for (const auto& [l, w] : lits) {
        int v = value(l);
        if (v > 0) t += w;
        else if (v == 0) u += w;
    }
    int h = value(head);
    if (t >= bound) {
        if (h < 0) out.conflict = true;
        else if (h == 0) out.forced.push_back(head);
        return out;
    }
    if (t + u < bound) {
        if (h > 0) out.conflict = true;
        else if (h == 0) out.forced.push_back(-head);
        return out;
    }
    if (h < 0) {
        for (const auto& [l, w] : lits)
            if (value(l) == 0 && t + w >= bound) out.forced.push_back(-l);
    } else if (h > 0) {
        for (const auto& [l, w] : lits)
            if (value(l) == 0 && t + u - w < bound) out.forced.push_back(l);
    }
    return out;
}

}  // namespace

////////////////////////////////////////////////////////////////////////////////
// Engine
////////////////////////////////////////////////////////////////////////////////

Engine::Engine(Var num_vars) { ensure_var(num_vars); }

void Engine::ensure_var(Var v) {
    std::size_t n = static_cast<std::size_t>(std::max<Var>(v, 0)) + 1;
    if (vals_.size() >= n) return;
    vals_.resize(n, 0);
    levels_.resize(n, 0);
    reasons_.resize(n, kDecision);
    watches_.resize(2 * n);
    wocc_.resize(n);
}

void Engine::attach(Ref r) {
    auto& ls = store_[r].lits;
    auto conflict = [&] {
        if (!pending_) pending_ = r;
    };
    if (ls.empty()) {
        conflict();
        return;
    }
    if (ls.size() == 1) {
        int v = value(ls[0]);
        if (v > 0) conflict();
        else if (v == 0) assign(-ls[0], r);
        return;
    }
    // Best watch candidates first: false entries, then unassigned, then true
    // entries by descending level.
    auto rank = [&](Lit l) {
        int v = value(l);
        if (v < 0) return std::pair{0, 0};
        if (v == 0) return std::pair{1, 0};
        return std::pair{2, -level(var_of(l))};
    };
    for (int k = 0; k < 2; ++k) {
        std::size_t best = static_cast<std::size_t>(k);
        for (std::size_t i = best + 1; i < ls.size(); ++i)
            if (rank(ls[i]) < rank(ls[best])) best = i;
        std::swap(ls[static_cast<std::size_t>(k)], ls[best]);
    }
    watches_[idx(ls[0])].push_back(r);
    watches_[idx(ls[1])].push_back(r);
    int v0 = value(ls[0]), v1 = value(ls[1]);
    if (v0 > 0) conflict();
    else if (v0 == 0 && v1 > 0) assign(-ls[0], r);
}

Engine::Ref Engine::add(std::span<const Lit> nogood) {
    Ref r = static_cast<Ref>(store_.size());
    Stored s;
    s.lits.assign(nogood.begin(), nogood.end());
    for (Lit l : s.lits) ensure_var(var_of(l));
    store_.push_back(std::move(s));
    if (store_[r].lits.size() <= 1) units_.push_back(r);
    attach(r);
    return r;
}

void Engine::remove(Ref r) {
    store_[r].alive = false;
    if (pending_ && *pending_ == r) pending_.reset();
}

bool Engine::is_reason(Ref r) const {
    for (Lit l : store_[r].lits) {
        Var v = var_of(l);
        if (vals_[static_cast<std::size_t>(v)] != 0 && reasons_[static_cast<std::size_t>(v)] == r) return true;
    }
    return false;
}

void Engine::add_weight(Var head, std::vector<std::pair<Lit, std::uint64_t>> lits, std::uint64_t bound) {
    ensure_var(head);
    auto w = static_cast<std::uint32_t>(weights_.size());
    wocc_[static_cast<std::size_t>(head)].push_back(w);
    for (const auto& [l, wt] : lits) {
        ensure_var(var_of(l));
        auto& occ = wocc_[static_cast<std::size_t>(var_of(l))];
        if (occ.empty() || occ.back() != w) occ.push_back(w);
    }
    weights_.push_back({head, std::move(lits), bound});
    if (!pending_) {
        if (auto c = propagate_weight(w)) pending_ = *c;
    }
}

void Engine::assign(Lit l, Ref reason) {
    auto v = static_cast<std::size_t>(var_of(l));
    vals_[v] = static_cast<signed char>(l > 0 ? 1 : -1);
    levels_[v] = decision_level();
    reasons_[v] = reason;
    trail_.push_back(l);
}

std::optional<Engine::Ref> Engine::propagate_weight(std::size_t w) {
    const Weight& c = weights_[w];
    auto step = eval_weight(c.head, c.lits, c.bound, [&](Lit l) { return value(l); });
    if (step.conflict) return static_cast<Ref>(kWeightBit | w);
    for (Lit l : step.forced) {
        int v = value(l);
        if (v < 0) return static_cast<Ref>(kWeightBit | w);
        if (v == 0) assign(l, kExternal);
    }
    return std::nullopt;
}

std::optional<Engine::Ref> Engine::propagate() {
    if (pending_) {
        Ref c = *pending_;
        pending_.reset();
        return c;
    }
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        auto& ws = watches_[idx(p)];
        std::size_t i = 0, j = 0;
        for (; i < ws.size(); ++i) {
            Ref r = ws[i];
            Stored& s = store_[r];
            if (!s.alive) continue;
            auto& ls = s.lits;
            if (ls[0] == p) std::swap(ls[0], ls[1]);
            if (ls[1] != p) continue;  // stale watch left behind by rebuild
            if (value(ls[0]) < 0) {
                ws[j++] = r;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < ls.size(); ++k) {
                if (value(ls[k]) <= 0) {
                    std::swap(ls[1], ls[k]);
                    watches_[idx(ls[1])].push_back(r);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = r;
            if (value(ls[0]) > 0) {
                for (++i; i < ws.size(); ++i) ws[j++] = ws[i];
                ws.resize(j);
                qhead_ = trail_.size();
                return r;
            }
            assign(-ls[0], r);
        }
        ws.resize(j);
        if (!weights_.empty()) {
            for (std::uint32_t w : wocc_[static_cast<std::size_t>(var_of(p))]) {
                if (auto c = propagate_weight(w)) {
                    qhead_ = trail_.size();
                    return c;
                }
            }
        }
    }
    return std::nullopt;
}

void Engine::backtrack(int level) {
    if (level >= decision_level()) return;
    std::size_t lim = limits_[static_cast<std::size_t>(level)];
    for (std::size_t i = trail_.size(); i-- > lim;) vals_[static_cast<std::size_t>(var_of(trail_[i]))] = 0;
    trail_.resize(lim);
    limits_.resize(static_cast<std::size_t>(level));
    qhead_ = std::min(qhead_, trail_.size());
    pending_.reset();
}

void Engine::rebuild() {
    for (Lit l : trail_) vals_[static_cast<std::size_t>(var_of(l))] = 0;
    trail_.clear();
    limits_.clear();
    qhead_ = 0;
    pending_.reset();
    for (auto& ws : watches_) ws.clear();
    for (Ref r = 0; r < store_.size(); ++r)
        if (store_[r].alive && store_[r].lits.size() >= 2) attach(r);
    for (Ref r : units_)
        if (store_[r].alive) attach(r);
    for (std::size_t w = 0; w < weights_.size() && !pending_; ++w)
        if (auto c = propagate_weight(w)) pending_ = *c;
}

std::vector<Lit> Engine::conflict_lits(Ref r) const {
    if (!(r & kWeightBit)) return store_[r].lits;
    const Weight& c = weights_[r & ~kWeightBit];
    std::vector<Lit> out;
    int h = value(c.head);
    // Violated either as F h with enough true weight, or as T h with too
    // little possible weight.
    std::uint64_t t = 0;
    for (const auto& [l, w] : c.lits)
        if (value(l) > 0) t += w;
    if (h < 0 && t >= c.bound) {
        out.push_back(-c.head);
        for (const auto& [l, w] : c.lits)
            if (value(l) > 0) out.push_back(l);
    } else {
        if (h > 0) out.push_back(c.head);
        for (const auto& [l, w] : c.lits)
            if (value(l) < 0) out.push_back(-l);
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Functional interface
////////////////////////////////////////////////////////////////////////////////

namespace {

Var max_var(const std::vector<Nogood>& delta, const Assignment& extra) {
    Var m = 0;
    for (const auto& n : delta)
        for (Lit l : n.entries()) m = std::max(m, var_of(l));
    for (Lit l : extra.entries()) m = std::max(m, var_of(l));
    return m;
}

}  // namespace

PropagationResult unit_propagate(const std::vector<Nogood>& delta, const Assignment& assumptions) {
    PropagationResult res;
    Engine e(max_var(delta, assumptions));
    for (Lit l : assumptions.entries()) e.assign(l, Engine::kDecision);
    std::size_t first = e.trail().size();
    for (const auto& n : delta) e.add(n.entries());
    auto conflict = e.propagate();
    for (std::size_t i = first; i < e.trail().size(); ++i) res.derived_units.push_back(complement(e.trail()[i]));
    if (conflict) {
        res.status = PropagationResult::Status::Conflict;
        res.conflict = Nogood(e.conflict_lits(*conflict));
    }
    return res;
}

bool is_rup(const std::vector<Nogood>& delta, const Nogood& nogood) {
    return unit_propagate(delta, nogood).status == PropagationResult::Status::Conflict;
}

std::optional<RupTrace> rup_trace(const std::vector<Nogood>& delta, const Nogood& nogood) {
    // Unit nogoods {u} known so far, with the derived units their
    // justification depends on (ordinals into `order`).
    struct Unit {
        std::set<std::size_t> cone;
    };
    std::map<Lit, Unit> units;
    std::vector<Lit> order;
    for (Lit l : nogood.entries()) units[complement(l)] = {};
    for (const auto& n : delta)
        if (n.size() == 1) units.emplace(n.entries().front(), Unit{});

    struct Candidate {
        std::set<std::size_t> cone;
        long index;  // position in delta, -1 for a unit nogood
        Nogood reduced;
    };
    std::optional<Candidate> best;
    auto offer = [&](Candidate c) {
        if (!best || c.cone.size() < best->cone.size() ||
            (c.cone.size() == best->cone.size() && c.index > best->index))
            best = std::move(c);
    };

    // Rounds of the fixpoint. A unit {l} follows from a nogood once all its
    // other entries are refuted, even if {~l} is known as well.
    for (;;) {
        std::vector<std::pair<Lit, Unit>> fresh;
        for (std::size_t i = 0; i < delta.size(); ++i) {
            const auto& es = delta[i].entries();
            std::vector<const Unit*> refuters(es.size(), nullptr);
            std::size_t open = 0;
            for (std::size_t k = 0; k < es.size(); ++k) {
                auto it = units.find(complement(es[k]));
                if (it == units.end()) ++open;
                else refuters[k] = &it->second;
            }
            if (open > 1) continue;
            for (std::size_t k = 0; k < es.size(); ++k) {
                if (open == 1 && refuters[k]) continue;
                if (units.count(es[k])) continue;
                Unit u;
                for (std::size_t j = 0; j < es.size(); ++j)
                    if (j != k) u.cone.insert(refuters[j]->cone.begin(), refuters[j]->cone.end());
                fresh.push_back({es[k], std::move(u)});
            }
            if (open == 0) {
                std::set<std::size_t> cone;
                for (const Unit* r : refuters) cone.insert(r->cone.begin(), r->cone.end());
                offer({cone, static_cast<long>(i), delta[i]});
            }
        }
        for (const auto& [u, info] : units) {
            auto it = units.find(complement(u));
            if (it == units.end()) continue;
            std::set<std::size_t> cone = info.cone;
            cone.insert(it->second.cone.begin(), it->second.cone.end());
            offer({cone, -1, Nogood({u})});
        }
        bool grew = false;
        for (auto& [u, info] : fresh) {
            if (units.count(u)) continue;
            info.cone.insert(order.size());
            order.push_back(u);
            units.emplace(u, std::move(info));
            grew = true;
        }
        if (!grew) break;
    }
    if (!best) return std::nullopt;
    RupTrace t;
    for (std::size_t k : best->cone) t.units.push_back(order[k]);
    t.reduced = best->reduced;
    return t;
}

WeightPropagation weight_propagate(const Rule& r, const Assignment& a) {
    if (r.kind != RuleKind::Weight) throw ContractError("weight_propagate needs a weight rule");
    Lit head = r.head.front();
    std::vector<std::pair<Lit, std::uint64_t>> lits;
    for (const auto& wl : r.weights) lits.push_back({wl.lit.tv(), wl.weight});
    auto value = [&](Lit l) { return a.contains(l) ? 1 : a.contains(-l) ? -1 : 0; };
    auto step = eval_weight(head, lits, r.bound, value);

    auto true_lits = [&] {
        std::vector<Lit> v;
        for (const auto& [l, w] : lits)
            if (value(l) > 0) v.push_back(l);
        return v;
    };
    auto refuted = [&] {
        std::vector<Lit> v;
        for (const auto& [l, w] : lits)
            if (value(l) < 0) v.push_back(-l);
        return v;
    };
    auto with = [](std::vector<Lit> v, std::initializer_list<Lit> more) {
        v.insert(v.end(), more);
        return Nogood(std::move(v));
    };

    if (step.conflict) {
        if (value(head) < 0) return WeightConflict{with(true_lits(), {-head})};
        return WeightConflict{with(refuted(), {head})};
    }
    std::vector<WeightDerivation> out;
    for (Lit l : step.forced) {
        if (l == head) out.push_back({l, with(true_lits(), {-head})});
        else if (l == -head) out.push_back({l, with(refuted(), {head})});
        else if (value(head) < 0) out.push_back({l, with(true_lits(), {-head, -l})});
        else out.push_back({l, with(refuted(), {head, -l})});
    }
    return out;
}

}  // namespace aspdrupe
