#include "aspdrupe/solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include "aspdrupe/propagation.hpp"

namespace aspdrupe {

std::vector<Var> unfounded_atoms(const DependencyGraph& g, const BodyRegistry& reg,
                                 const std::function<int(Lit)>& value) {
    std::size_t n = reg.num_atoms();
    std::vector<char> founded(n + 1, 1);
    std::vector<Var> cand;
    for (Var a = 1; static_cast<std::size_t>(a) <= n; ++a) {
        if (g.on_cycle(a) && value(a) >= 0) {
            founded[static_cast<std::size_t>(a)] = 0;
            cand.push_back(a);
        }
    }
    if (cand.empty()) return {};
    for (bool changed = true; changed;) {
        changed = false;
        for (Var a : cand) {
            if (founded[static_cast<std::size_t>(a)]) continue;
            for (const auto& b : reg.ib(a)) {
                if (value(reg.id_of(b)) < 0) continue;
                bool ok = std::all_of(b.begin(), b.end(), [&](Lit l) { return l < 0 || founded[static_cast<std::size_t>(l)]; });
                if (ok) {
                    founded[static_cast<std::size_t>(a)] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<Var> u;
    for (Var a : cand)
        if (!founded[static_cast<std::size_t>(a)]) u.push_back(a);
    return u;
}

std::vector<Var> source_loop(const DependencyGraph& g, const std::vector<Var>& u) {
    std::set<Var> in(u.begin(), u.end());
    auto reach = [&](Var from, bool forward) {
        std::set<Var> seen{from};
        std::vector<Var> todo{from};
        while (!todo.empty()) {
            Var v = todo.back();
            todo.pop_back();
            for (Var w : forward ? g.successors(v) : g.predecessors(v))
                if (in.count(w) && seen.insert(w).second) todo.push_back(w);
        }
        return seen;
    };
    std::set<Var> done;
    std::vector<Var> fallback;
    for (Var a : u) {
        if (done.count(a)) continue;
        auto fw = reach(a, true), bw = reach(a, false);
        std::vector<Var> comp;
        for (Var x : fw)
            if (bw.count(x)) comp.push_back(x);
        done.insert(comp.begin(), comp.end());
        // Source component: every U-predecessor of a member is a member.
        bool source = std::all_of(comp.begin(), comp.end(), [&](Var x) {
            const auto& pr = g.predecessors(x);
            return std::all_of(pr.begin(), pr.end(), [&](Var y) { return !in.count(y) || std::binary_search(comp.begin(), comp.end(), y); });
        });
        bool loop = comp.size() > 1 || g.has_edge(comp.front(), comp.front());
        if (source && loop) return comp;
        if (loop && fallback.empty()) fallback = comp;
    }
    return fallback;
}

namespace {

// Luby sequence 1 1 2 1 1 2 4 ...
std::uint64_t luby(std::uint64_t i) {
    std::uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    std::uint64_t x = i;
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    return std::uint64_t{1} << seq;
}

class Solver {
public:
    Solver(const Program& p, const SolverOptions& opts, std::ostream* out)
        : p_(p), opts_(opts), reg_(p, opts.expansion_budget), graph_(p), writer_(out), rng_(opts.seed) {}

    SolveResult run();

private:
    void setup();
    std::optional<Engine::Ref> propagate();
    void log_reasons();
    void log(Engine::Ref r);
    std::vector<Lit> analyze(const std::vector<Lit>& conflict, int& backjump);
    bool decide();
    void backtrack(int level);
    void forget();
    bool out_of_budget() const;

    const Program& p_;
    SolverOptions opts_;
    BodyRegistry reg_;
    DependencyGraph graph_;
    ProofWriter writer_;
    Engine engine_;
    Var max_var_ = 0;

    // Completion step to log on first use, indexed by engine ref.
    std::vector<int> tag_;
    std::vector<ProofStep> pending_steps_;
    std::vector<char> logged_;
    std::size_t logged_upto_ = 0;
    std::vector<Engine::Ref> learned_refs_;
    std::vector<char> seen_;

    SolveResult res_;
    std::mt19937_64 rng_;
    std::size_t script_pos_ = 0;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void Solver::setup() {
    if (p_.has_disjunction()) throw UnsupportedError("solving disjunctive programs is not supported (checking is)");
    if (!reg_.unexpanded_rules().empty())
        throw UnsupportedError("weight rule exceeds the expansion budget of " + std::to_string(opts_.expansion_budget) + " bodies");
    for (const Rule& r : p_.rules()) {
        if (r.kind != RuleKind::Weight) continue;
        Var a = r.head.front();
        for (Var b : r.pos)
            if (graph_.on_cycle(a) && graph_.scc()[static_cast<std::size_t>(b)] == graph_.scc()[static_cast<std::size_t>(a)])
                throw UnsupportedError("recursive weight rule for atom " + p_.name(a));
    }

    for (const auto& [id, body] : opts_.body_numbering) reg_.declare(id, body);
    reg_.assign_sequential_ids(std::max<Var>(static_cast<Var>(p_.num_atoms()), reg_.max_id()) + 1);
    max_var_ = std::max<Var>(static_cast<Var>(p_.num_atoms()), reg_.max_id());
    engine_.ensure_var(max_var_);
    seen_.assign(static_cast<std::size_t>(max_var_) + 1, 0);

    auto add = [&](const Nogood& n, int tag) {
        Engine::Ref r = engine_.add(n.entries());
        if (tag_.size() <= r) tag_.resize(r + 1, -1);
        tag_[r] = tag;
    };
    for (Var id : reg_.body_ids()) {
        writer_.write(ProofStep::body(id, reg_.body(id)));
        for (const auto& n : build_bdef(reg_, id)) add(n, -1);
    }
    for (const auto& [a, b] : reg_.backward_pairs()) {
        Var id = reg_.id_of(b);
        pending_steps_.push_back(ProofStep::rule(id, {a}));
        add(Nogood({-a, id}), static_cast<int>(pending_steps_.size()) - 1);
    }
    for (Var a = 1; static_cast<std::size_t>(a) <= p_.num_atoms(); ++a) {
        std::vector<Var> ids;
        for (const auto& b : reg_.ib(a)) ids.push_back(reg_.id_of(b));
        pending_steps_.push_back(ProofStep::support(a, ids));
        add(build_forward(reg_, a), static_cast<int>(pending_steps_.size()) - 1);
    }
    logged_.assign(pending_steps_.size(), 0);
}

void Solver::log(Engine::Ref r) {
    if (r >= tag_.size() || tag_[r] < 0) return;
    auto t = static_cast<std::size_t>(tag_[r]);
    if (logged_[t]) return;
    logged_[t] = 1;
    writer_.write(pending_steps_[t]);
}

void Solver::log_reasons() {
    const auto& trail = engine_.trail();
    for (; logged_upto_ < trail.size(); ++logged_upto_) {
        Engine::Ref r = engine_.reason(var_of(trail[logged_upto_]));
        if (r != Engine::kDecision) log(r);
    }
}

std::optional<Engine::Ref> Solver::propagate() {
    for (;;) {
        auto conflict = engine_.propagate();
        log_reasons();
        if (conflict) {
            log(*conflict);
            return conflict;
        }
        if (graph_.is_tight()) return std::nullopt;
        auto u = unfounded_atoms(graph_, reg_, [&](Lit l) { return engine_.value(l); });
        if (u.empty()) return std::nullopt;
        auto loop = source_loop(graph_, u);
        if (loop.empty()) throw std::logic_error("unfounded set without a loop");
        auto first = std::find_if(loop.begin(), loop.end(), [&](Var a) { return engine_.value(a) > 0; });
        if (first != loop.end()) std::iter_swap(loop.begin(), first);
        Nogood lambda = loop_nogood(reg_, loop.front(), loop);
        writer_.write(ProofStep::loop(loop));
        Engine::Ref r = engine_.add(lambda.entries());
        if (tag_.size() <= r) tag_.resize(r + 1, -1);
    }
}

std::vector<Lit> Solver::analyze(const std::vector<Lit>& conflict, int& backjump) {
    int dl = engine_.decision_level();
    std::vector<Lit> out;
    int pending = 0;
    auto visit = [&](Lit l) {
        Var v = var_of(l);
        auto vi = static_cast<std::size_t>(v);
        if (seen_[vi] || engine_.level(v) == 0) return;
        seen_[vi] = 1;
        if (engine_.level(v) == dl) ++pending;
        else out.push_back(l);
    };
    for (Lit l : conflict) visit(l);
    const auto& trail = engine_.trail();
    std::size_t i = trail.size();
    Lit uip = 0;
    while (pending > 0) {
        do --i;
        while (!seen_[static_cast<std::size_t>(var_of(trail[i]))]);
        Lit p = trail[i];
        seen_[static_cast<std::size_t>(var_of(p))] = 0;
        if (--pending == 0) {
            uip = p;
            break;
        }
        Engine::Ref r = engine_.reason(var_of(p));
        for (Lit l : engine_.lits(r))
            if (l != -p) visit(l);
    }
    backjump = 0;
    for (Lit l : out) {
        seen_[static_cast<std::size_t>(var_of(l))] = 0;
        backjump = std::max(backjump, engine_.level(var_of(l)));
    }
    out.insert(out.begin(), uip);
    return out;
}

void Solver::backtrack(int level) {
    engine_.backtrack(level);
    logged_upto_ = std::min(logged_upto_, engine_.trail().size());
}

bool Solver::decide() {
    Var chosen = 0;
    bool sign = opts_.heuristic != Heuristic::LowestFalse;
    while (script_pos_ < opts_.scripted_decisions.size()) {
        Lit l = opts_.scripted_decisions[script_pos_++];
        if (engine_.value(l) == 0) {
            chosen = var_of(l);
            sign = l > 0;
            break;
        }
    }
    if (!chosen) {
        if (opts_.heuristic == Heuristic::Random) {
            std::vector<Var> free;
            for (Var v = 1; v <= max_var_; ++v)
                if (engine_.value(v) == 0) free.push_back(v);
            if (free.empty()) return false;
            chosen = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng_)];
            sign = (rng_() & 1) != 0;
        } else {
            for (Var v = 1; v <= max_var_ && !chosen; ++v)
                if (engine_.value(v) == 0) chosen = v;
            if (!chosen) return false;
        }
    }
    ++res_.decisions;
    engine_.new_level();
    engine_.assign(make_lit(chosen, sign), Engine::kDecision);
    return true;
}

void Solver::forget() {
    // Drop the older half of the learned nogoods that are not reasons.
    std::vector<Engine::Ref> keep, drop;
    std::size_t half = learned_refs_.size() / 2;
    for (std::size_t i = 0; i < learned_refs_.size(); ++i) {
        Engine::Ref r = learned_refs_[i];
        if (i < half && engine_.lits(r).size() > 2 && !engine_.is_reason(r)) drop.push_back(r);
        else keep.push_back(r);
    }
    for (Engine::Ref r : drop) {
        writer_.write(ProofStep::del(engine_.lits(r)));
        engine_.remove(r);
    }
    learned_refs_ = std::move(keep);
}

bool Solver::out_of_budget() const {
    if (opts_.max_conflicts && res_.conflicts >= opts_.max_conflicts) return true;
    if (opts_.max_seconds > 0) {
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
        if (el.count() > opts_.max_seconds) return true;
    }
    return false;
}

SolveResult Solver::run() {
    setup();
    std::uint64_t restart_count = 0, next_restart = opts_.restart_unit * luby(0), since_restart = 0;
    for (;;) {
        auto conflict = propagate();
        if (conflict) {
            ++res_.conflicts;
            ++since_restart;
            std::vector<Lit> lits = engine_.conflict_lits(*conflict);
            int top = 0;
            for (Lit l : lits) top = std::max(top, engine_.level(var_of(l)));
            if (top == 0) {
                writer_.write(ProofStep::add({}));
                res_.verdict = SolveResult::Verdict::Inconsistent;
                break;
            }
            if (top < engine_.decision_level()) backtrack(top);
            int backjump = 0;
            std::vector<Lit> learned = analyze(lits, backjump);
            if (opts_.verify_learned) {
                std::vector<Nogood> db;
                for (Engine::Ref r = 0; r < engine_.num_stored(); ++r)
                    if (engine_.alive(r)) db.emplace_back(engine_.lits(r));
                if (!is_rup(db, Nogood(learned))) throw std::logic_error("learned nogood is not RUP");
            }
            writer_.write(ProofStep::add(learned));
            res_.learned.emplace_back(learned);
            backtrack(backjump);
            Engine::Ref r = engine_.add(learned);
            if (tag_.size() <= r) tag_.resize(r + 1, -1);
            if (learned.size() > 1) learned_refs_.push_back(r);
            if (out_of_budget()) {
                res_.message = "resource limit reached";
                break;
            }
            if (opts_.restarts && since_restart >= next_restart) {
                since_restart = 0;
                next_restart = opts_.restart_unit * luby(++restart_count);
                backtrack(0);
                forget();
            }
            continue;
        }
        if (!decide()) {
            res_.verdict = SolveResult::Verdict::Consistent;
            for (Var a = 1; static_cast<std::size_t>(a) <= p_.num_atoms(); ++a)
                if (engine_.value(a) > 0) res_.answer_set.push_back(a);
            break;
        }
    }
    res_.proof = writer_.take();
    return res_;
}

}  // namespace

SolveResult solve(const Program& p, const SolverOptions& opts, std::ostream* proof_out) {
    return Solver(p, opts, proof_out).run();
}

}  // namespace aspdrupe
