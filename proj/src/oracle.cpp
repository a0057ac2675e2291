#include "aspdrupe/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "aspdrupe/loops.hpp"

namespace aspdrupe {

namespace {

using Mask = std::uint64_t;

Mask bit(Var a) { return Mask{1} << (a - 1); }

struct GroundRule {
    Mask head = 0, pos = 0, neg = 0;
};

// Normal/disjunctive rules over at(P) plus one complement atom per choice head.
struct Translation {
    std::vector<GroundRule> rules;
    std::size_t n = 0;                        // atoms of P
    std::vector<std::pair<Var, Var>> primes;  // (a, a')
};

Translation translate(const Program& p) {
    Translation t;
    t.n = p.num_atoms();
    if (t.n > kOracleMaxAtoms) throw LimitError("oracle supports at most " + std::to_string(kOracleMaxAtoms) + " atoms");
    Var next = static_cast<Var>(t.n) + 1;
    std::map<Var, Var> prime;
    auto mask_of = [](const std::vector<Var>& v) {
        Mask m = 0;
        for (Var a : v) m |= bit(a);
        return m;
    };
    for (const Rule& r : p.rules()) {
        switch (r.kind) {
            case RuleKind::Disjunctive:
                t.rules.push_back({mask_of(r.head), mask_of(r.pos), mask_of(r.neg)});
                break;
            case RuleKind::Choice:
                for (Var a : r.head) {
                    auto [it, fresh] = prime.emplace(a, next);
                    if (fresh) {
                        t.primes.emplace_back(a, next);
                        t.rules.push_back({bit(next), 0, bit(a)});
                        ++next;
                    }
                    t.rules.push_back({bit(a), mask_of(r.pos), mask_of(r.neg) | bit(it->second)});
                }
                break;
            case RuleKind::Weight:
                for (const LitSet& l : minimal_weight_bodies(r)) {
                    GroundRule g{bit(r.head.front()), 0, 0};
                    for (Lit x : l) (x > 0 ? g.pos : g.neg) |= bit(var_of(x));
                    t.rules.push_back(g);
                }
                break;
        }
    }
    return t;
}

// Least model of the reduct of normal rules, or the stability test for
// disjunctive ones.
bool stable(const Translation& t, Mask m) {
    // Complement atoms are determined by m: a' holds iff a does not.
    for (auto [a, ap] : t.primes)
        if (!(m & bit(a))) m |= bit(ap);
    std::vector<const GroundRule*> reduct;
    for (const auto& r : t.rules)
        if (!(r.neg & m)) reduct.push_back(&r);
    auto model = [&](Mask x) {
        return std::all_of(reduct.begin(), reduct.end(), [&](const GroundRule* r) { return (r->pos & ~x) || (r->head & x); });
    };
    if (!model(m)) return false;
    bool normal = std::all_of(reduct.begin(), reduct.end(), [](const GroundRule* r) { return std::popcount(r->head) <= 1; });
    if (normal) {
        Mask lm = 0;
        for (bool changed = true; changed;) {
            changed = false;
            for (const GroundRule* r : reduct)
                if (r->head && !(r->pos & ~lm) && !(r->head & lm)) {
                    lm |= r->head;
                    changed = true;
                }
        }
        return lm == m;
    }
    // Proper subsets of m, via the standard submask walk.
    for (Mask s = (m - 1) & m;; s = (s - 1) & m) {
        if (model(s)) return false;
        if (s == 0) break;
    }
    return true;
}

struct VarIndex {
    std::map<Var, int> idx;
    void add(const Nogood& n) {
        for (Lit l : n.entries()) idx.emplace(var_of(l), 0);
    }
    void finish() {
        if (idx.size() > kOracleMaxVars) throw LimitError("oracle supports at most " + std::to_string(kOracleMaxVars) + " variables");
        int i = 0;
        for (auto& [v, k] : idx) k = i++;
    }
    std::pair<Mask, Mask> masks(const Nogood& n) const {
        Mask t = 0, f = 0;
        for (Lit l : n.entries()) (l > 0 ? t : f) |= Mask{1} << idx.at(var_of(l));
        return {t, f};
    }
};

bool violates_none(const std::vector<std::pair<Mask, Mask>>& ns, Mask a) {
    return std::none_of(ns.begin(), ns.end(), [&](const auto& n) { return (n.first & ~a) == 0 && (n.second & a) == 0; });
}

}  // namespace

std::vector<std::vector<Var>> enumerate_answer_sets(const Program& p, std::size_t cap) {
    Translation t = translate(p);
    std::vector<std::vector<Var>> out;
    for (Mask m = 0; m < (Mask{1} << t.n); ++m) {
        if (!stable(t, m)) continue;
        std::vector<Var> s;
        for (Var a = 1; static_cast<std::size_t>(a) <= t.n; ++a)
            if (m & bit(a)) s.push_back(a);
        out.push_back(std::move(s));
        if (cap && out.size() >= cap) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_answer_set(const Program& p, const std::vector<Var>& m) {
    Translation t = translate(p);
    Mask x = 0;
    for (Var a : m) {
        if (!p.has_atom(a)) return false;
        x |= bit(a);
    }
    return stable(t, x);
}

bool entails(const std::vector<Nogood>& delta, const std::vector<Nogood>& gamma) {
    VarIndex vi;
    for (const auto& n : delta) vi.add(n);
    for (const auto& n : gamma) vi.add(n);
    vi.finish();
    std::vector<std::pair<Mask, Mask>> d, g;
    for (const auto& n : delta) d.push_back(vi.masks(n));
    for (const auto& n : gamma) g.push_back(vi.masks(n));
    for (Mask a = 0; a < (Mask{1} << vi.idx.size()); ++a)
        if (violates_none(d, a) && !violates_none(g, a)) return false;
    return true;
}

std::vector<std::vector<Var>> nogood_models(const std::vector<Nogood>& delta, std::vector<Var> vars) {
    VarIndex vi;
    for (Var v : vars) vi.idx.emplace(v, 0);
    for (const auto& n : delta) vi.add(n);
    vi.finish();
    std::vector<std::pair<Mask, Mask>> d;
    for (const auto& n : delta) d.push_back(vi.masks(n));
    std::vector<std::vector<Var>> out;
    for (Mask a = 0; a < (Mask{1} << vi.idx.size()); ++a) {
        if (!violates_none(d, a)) continue;
        std::vector<Var> s;
        for (auto [v, k] : vi.idx)
            if (a & (Mask{1} << k)) s.push_back(v);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Nogood> completion_nogoods(const BodyRegistry& reg) {
    std::vector<Nogood> out;
    for (Var id : reg.body_ids())
        for (auto& n : build_bdef(reg, id)) out.push_back(std::move(n));
    for (auto& n : build_backward(reg)) out.push_back(std::move(n));
    for (Var a = 1; static_cast<std::size_t>(a) <= reg.num_atoms(); ++a) out.push_back(build_forward(reg, a));
    return out;
}

std::vector<Nogood> all_loop_nogoods(const Program& p, const BodyRegistry& reg) {
    std::size_t n = p.num_atoms();
    if (n > kOracleMaxAtoms) throw LimitError("oracle supports at most " + std::to_string(kOracleMaxAtoms) + " atoms");
    DependencyGraph g(p);
    std::vector<Var> cyclic;
    for (Var a = 1; static_cast<std::size_t>(a) <= n; ++a)
        if (g.on_cycle(a)) cyclic.push_back(a);
    std::vector<Nogood> out;
    for (Mask s = 1; s < (Mask{1} << cyclic.size()); ++s) {
        std::vector<Var> u;
        for (std::size_t i = 0; i < cyclic.size(); ++i)
            if (s & (Mask{1} << i)) u.push_back(cyclic[i]);
        if (!is_loop(g, u)) continue;
        for (Var a : u) out.push_back(loop_nogood(reg, a, u));
    }
    return out;
}

}  // namespace aspdrupe
