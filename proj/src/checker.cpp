#include "aspdrupe/checker.hpp"

#include <algorithm>
#include <set>

namespace aspdrupe {

Checker::Checker(const Program& p, CheckOptions opts)
    : p_(p), opts_(opts), reg_(p, opts.expansion_budget), graph_(p),
      next_internal_(static_cast<Var>(p.num_atoms()) + 1) {
    engine_.ensure_var(static_cast<Var>(p.num_atoms()));
    if (opts_.preloaded_completion) seed_completion();
}

void Checker::seed_completion() {
    reg_.assign_sequential_ids(next_internal_);
    for (Var id : reg_.body_ids()) {
        body_var_.emplace(reg_.body(id), id);
        next_internal_ = std::max(next_internal_, id + 1);
    }
    for (Var id : reg_.body_ids())
        for (const auto& n : build_bdef(reg_, id)) insert(n.entries());
    for (const auto& n : build_backward(reg_)) insert(n.entries());

    // Weight rules too large to expand: one variable per rule for its weight
    // body, defined by a weight constraint.
    std::unordered_map<Var, std::vector<Var>> extra_support;
    for (std::size_t ri : reg_.unexpanded_rules()) {
        const Rule& r = p_.rules()[ri];
        Var w = fresh_internal();
        std::vector<std::pair<Lit, std::uint64_t>> lits;
        for (const auto& wl : r.weights) lits.push_back({wl.lit.tv(), wl.weight});
        engine_.add_weight(w, std::move(lits), r.bound);
        insert({-r.head.front(), w});
        extra_support[r.head.front()].push_back(w);
    }
    for (Var a = 1; static_cast<std::size_t>(a) <= p_.num_atoms(); ++a) {
        Nogood n = build_forward(reg_, a);
        for (Var w : extra_support[a]) n.insert(-w);
        insert(n.entries());
    }
}

bool Checker::fail(std::string msg) {
    error_ = std::move(msg);
    return false;
}

Var Checker::intern(Var id) const {
    if (p_.has_atom(id)) return id;
    auto it = to_internal_.find(id);
    return it == to_internal_.end() ? 0 : it->second;
}

Lit Checker::intern_lit(Lit l) const {
    Var v = intern(var_of(l));
    return v ? make_lit(v, l > 0) : 0;
}

Var Checker::fresh_internal() {
    Var v = next_internal_++;
    engine_.ensure_var(v);
    return v;
}

void Checker::propagate_top() {
    if (top_conflict_) return;
    if (engine_.propagate()) top_conflict_ = true;
}

void Checker::insert(std::vector<Lit> n) {
    std::sort(n.begin(), n.end(), lit_less);
    n.erase(std::unique(n.begin(), n.end()), n.end());
    if (n.empty()) ++box_count_;
    Engine::Ref r = engine_.add(n);
    copies_[n].push_back(r);
    propagate_top();
}

bool Checker::is_rup(const std::vector<Lit>& nogood) {
    if (top_conflict_) return true;
    std::vector<Lit> internal;
    for (Lit l : nogood) {
        Lit x = intern_lit(l);
        if (!x) return false;
        internal.push_back(x);
    }
    engine_.new_level();
    bool conflict = false;
    for (Lit l : internal) {
        int v = engine_.value(l);
        if (v < 0) {
            conflict = true;
            break;
        }
        if (v == 0) engine_.assign(l, Engine::kDecision);
    }
    if (!conflict) conflict = engine_.propagate().has_value();
    engine_.backtrack(0);
    return conflict;
}

bool Checker::step(const ProofStep& s) {
    error_.clear();
    // Ids mentioned on this line; they count as used for later freshness tests.
    std::vector<Var> mentioned;
    auto note = [&](Lit l) { mentioned.push_back(var_of(l)); };
    for (Lit l : s.delta) note(l);
    for (Lit l : s.extra) note(l);
    if (s.atom) note(s.atom);
    struct Commit {
        Checker& c;
        std::vector<Var>& ids;
        ~Commit() { c.seen_.insert(ids.begin(), ids.end()); }
    } commit{*this, mentioned};

    auto translate = [&](const std::vector<Lit>& v, std::vector<Lit>& out) {
        for (Lit l : v) {
            Lit x = intern_lit(l);
            if (!x) return fail("unknown variable id " + std::to_string(var_of(l)));
            out.push_back(x);
        }
        return true;
    };

    switch (s.type) {
        case StepType::Body: {
            Var id = s.atom;
            if (p_.has_atom(id) || to_internal_.count(id) || seen_.count(id))
                return fail("body id " + std::to_string(id) + " is not fresh");
            LitSet lits = s.extra;
            canonicalize(lits);
            if (!reg_.in_bod(lits)) return fail("body " + to_string(lits) + " is not an induced body of the program");
            proof_body_[id] = lits;
            if (opts_.preloaded_completion) {
                Var v = body_var_.at(lits);
                to_internal_[id] = v;
                to_proof_.emplace(v, id);
                return true;
            }
            Var v = fresh_internal();
            to_internal_[id] = v;
            to_proof_[v] = id;
            body_var_.emplace(lits, v);
            for (const auto& n : build_bdef(lits, v)) insert(n.entries());
            return true;
        }
        case StepType::Add: {
            std::vector<Lit> n;
            if (!translate(s.delta, n)) return false;
            if (!top_conflict_ && !is_rup(s.delta)) return fail("nogood is not RUP");
            insert(std::move(n));
            return true;
        }
        case StepType::Rule: {
            if (s.delta.size() < 2 || s.delta[0] <= 0) return fail("malformed completion rule step");
            auto it = proof_body_.find(s.delta[0]);
            if (it == proof_body_.end()) return fail("undeclared body id " + std::to_string(s.delta[0]));
            if (s.delta.size() != 2) return fail("nogood has more than one F atom; not in the rule family");
            Var a = var_of(s.delta[1]);
            if (!reg_.is_backward(a, it->second))
                return fail("{F " + std::to_string(a) + ", T " + std::to_string(s.delta[0]) + "} is not a completion rule nogood");
            insert({-a, intern(s.delta[0])});
            return true;
        }
        case StepType::Support: {
            Var a = s.atom;
            if (!p_.has_atom(a)) return fail("unknown atom " + std::to_string(a));
            if (!reg_.ib_complete(a)) return fail("support of atom " + std::to_string(a) + " involves an unexpanded weight rule");
            std::set<LitSet> listed, expected(reg_.ib(a).begin(), reg_.ib(a).end());
            std::vector<Lit> n{a};
            for (Lit l : s.delta) {
                auto it = proof_body_.find(var_of(l));
                if (l > 0 || it == proof_body_.end()) return fail("undeclared body id " + std::to_string(var_of(l)));
                listed.insert(it->second);
                n.push_back(-intern(var_of(l)));
            }
            if (listed != expected)
                return fail("listed bodies differ from the induced bodies of atom " + std::to_string(a));
            insert(std::move(n));
            return true;
        }
        case StepType::Extend: {
            Var x = s.atom;
            if (x <= 0 || p_.has_atom(x) || to_internal_.count(x) || seen_.count(x))
                return fail("extension variable " + std::to_string(x) + " is not fresh");
            std::vector<Lit> n;
            if (!translate(s.delta, n)) return false;
            Var v = fresh_internal();
            to_internal_[x] = v;
            to_proof_[v] = x;
            std::vector<Lit> def = n;
            def.push_back(-v);
            insert(def);
            Nogood ext(std::vector<Lit>(s.delta.begin(), s.delta.end()));
            ext.insert(-x);
            extensions_.push_back(ext);
            for (std::size_t i = 0; i < n.size(); ++i) {
                insert({v, -n[i]});
                extensions_.push_back(Nogood({x, -s.delta[i]}));
            }
            return true;
        }
        case StepType::Delete: {
            std::vector<Lit> n;
            if (!translate(s.delta, n)) return false;
            std::sort(n.begin(), n.end(), lit_less);
            auto it = copies_.find(n);
            if (it == copies_.end() || it->second.empty()) {
                if (opts_.strict_delete) return fail("deleted nogood is not present");
                return true;
            }
            Engine::Ref r = it->second.back();
            it->second.pop_back();
            if (n.empty()) --box_count_;
            bool was_reason = engine_.is_reason(r);
            engine_.remove(r);
            if (was_reason || top_conflict_) {
                top_conflict_ = false;
                engine_.rebuild();
                propagate_top();
            }
            return true;
        }
        case StepType::Loop: {
            std::vector<Var> u(s.delta.begin(), s.delta.end());
            if (!is_loop(graph_, u)) return fail("atom set is not a loop of the program");
            std::vector<LitSet> eb;
            try {
                eb = external_bodies(reg_, u);
            } catch (const LimitError& e) {
                return fail(e.what());
            }
            std::vector<Lit> n{s.atom};
            for (const auto& b : eb) {
                auto it = body_var_.find(b);
                if (it == body_var_.end()) return fail("external body " + to_string(b) + " has no declared body id");
                n.push_back(-it->second);
            }
            insert(std::move(n));
            return true;
        }
        case StepType::Unfounded: {
            std::vector<Var> u(s.delta.begin(), s.delta.end());
            Assignment a;
            try {
                a = Assignment(s.extra);
            } catch (const ContractError& e) {
                return fail(e.what());
            }
            std::vector<Lit> n;
            if (!translate(s.extra, n)) return false;
            bool touches = std::any_of(u.begin(), u.end(), [&](Var x) { return a.contains(x); });
            if (!touches) return fail("assignment makes no atom of the unfounded set true");
            auto refuted = [&](const LitSet& body) {
                for (Var f : a.false_vars()) {
                    auto it = proof_body_.find(f);
                    if (it != proof_body_.end() && it->second == body) return true;
                }
                return false;
            };
            bool unfounded;
            try {
                unfounded = is_unfounded_set(p_, a, u, refuted);
            } catch (const LimitError& e) {
                return fail(e.what());
            }
            if (!unfounded) return fail("atom set is not unfounded for the assignment");
            insert(std::move(n));
            return true;
        }
    }
    return fail("unknown step type");
}

std::vector<Nogood> Checker::nogoods() const {
    // Engine refs grow with insertion, so sorting by ref gives proof order.
    std::vector<std::pair<Engine::Ref, const std::vector<Lit>*>> all;
    for (const auto& [n, refs] : copies_)
        for (Engine::Ref r : refs) all.emplace_back(r, &n);
    std::sort(all.begin(), all.end());
    std::vector<Nogood> out;
    for (const auto& [r, n] : all) {
        std::vector<Lit> ext;
        for (Lit l : *n) {
            Var v = var_of(l);
            Var id = v;
            if (!p_.has_atom(v)) {
                auto it = to_proof_.find(v);
                if (it == to_proof_.end()) throw ContractError("nogood uses a variable without proof id");
                id = it->second;
            }
            ext.push_back(make_lit(id, l > 0));
        }
        out.emplace_back(ext);
    }
    return out;
}

std::vector<Nogood> Checker::extension_nogoods() const { return extensions_; }

CheckResult check(const Program& p, const Proof& proof, const CheckOptions& opts) {
    CheckResult res;
    Checker c(p, opts);
    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
        if (!c.step(proof.steps[i])) {
            res.outcome = CheckResult::Outcome::Error;
            res.step = i + 1;
            res.line = i < proof.lines.size() ? proof.lines[i] : 0;
            res.reason = c.error();
            return res;
        }
    }
    if (!c.has_empty_nogood()) {
        res.outcome = CheckResult::Outcome::Error;
        res.reason = "the empty nogood was never added";
        return res;
    }
    res.outcome = CheckResult::Outcome::Success;
    return res;
}

CheckResult check_text(const Program& p, std::string_view proof_text, const CheckOptions& opts) {
    Proof proof;
    try {
        BodyRegistry reg(p, opts.expansion_budget);
        proof = parse_proof(proof_text, p, reg);
    } catch (const ParseError& e) {
        CheckResult res;
        res.outcome = CheckResult::Outcome::ParseFailure;
        res.line = e.line();
        res.reason = e.what();
        return res;
    }
    return check(p, proof, opts);
}

}  // namespace aspdrupe
