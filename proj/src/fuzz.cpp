#include "aspdrupe/fuzz.hpp"

#include <algorithm>

#include "aspdrupe/checker.hpp"
#include "aspdrupe/oracle.hpp"
#include "aspdrupe/program_io.hpp"
#include "aspdrupe/solver.hpp"

namespace aspdrupe {

Program random_program(const FuzzConfig& cfg, std::mt19937_64& rng) {
    Program p;
    for (std::size_t i = 1; i <= cfg.atoms; ++i) p.atom("p" + std::to_string(i));
    if (cfg.atoms == 0) return p;
    std::uniform_int_distribution<std::size_t> nrules(0, cfg.max_rules), blen(0, cfg.max_body);
    std::uniform_int_distribution<Var> atom(1, static_cast<Var>(cfg.atoms));
    std::bernoulli_distribution neg(cfg.negation_prob), constraint(cfg.constraint_prob);
    std::size_t r = nrules(rng);
    std::vector<std::pair<std::vector<Var>, std::vector<Var>>> constraints;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Var> pos, ng;
        for (std::size_t k = blen(rng); k > 0; --k) {
            Var a = atom(rng);
            auto& side = neg(rng) ? ng : pos;
            if (std::find(side.begin(), side.end(), a) == side.end()) side.push_back(a);
        }
        if (constraint(rng) && !(pos.empty() && ng.empty())) constraints.emplace_back(pos, ng);
        else p.add_rule(Rule::normal(atom(rng), pos, ng));
    }
    // Constraints as in LP-lite: a fresh atom that would refute itself.
    for (auto& [pos, ng] : constraints) {
        Var bot = p.fresh_atom("__bot");
        ng.push_back(bot);
        p.add_rule(Rule::normal(bot, pos, ng));
    }
    return p;
}

FuzzReport run_fuzz(std::size_t count, const FuzzConfig& cfg, std::uint64_t seed) {
    FuzzReport rep;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        Program p = random_program(cfg, rng);
        ++rep.programs;
        auto fail = [&](const std::string& what) {
            std::string text = print_program(p);
            std::replace(text.begin(), text.end(), '\n', ' ');
            rep.discrepancies.push_back("#" + std::to_string(i) + " " + what + ": " + text);
        };
        bool oracle_consistent = !enumerate_answer_sets(p, 1).empty();
        SolveResult res = solve(p);
        if (res.verdict == SolveResult::Verdict::Consistent) {
            ++rep.consistent;
            if (!oracle_consistent) fail("solver CONSISTENT, oracle INCONSISTENT");
            else if (!is_answer_set(p, res.answer_set)) fail("answer set fails the stability test");
        } else if (res.verdict == SolveResult::Verdict::Inconsistent) {
            ++rep.inconsistent;
            if (oracle_consistent) fail("solver INCONSISTENT, oracle CONSISTENT");
            CheckResult c = check(p, res.proof);
            if (!c.ok()) fail("proof rejected at step " + std::to_string(c.step) + ": " + c.reason);
        } else {
            fail("solver gave no verdict");
        }
    }
    return rep;
}

}  // namespace aspdrupe
