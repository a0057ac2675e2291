#include "aspdrupe/solver.hpp"

#include <sstream>

#include "aspdrupe/checker.hpp"
#include "aspdrupe/oracle.hpp"
#include "aspdrupe/program_io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aspdrupe;
using namespace fixtures;
using Verdict = SolveResult::Verdict;

namespace {

// n+1 pigeons, n holes: every pigeon sits somewhere, no hole is shared.
Program pigeonhole(int n) {
    std::string text;
    auto at = [](int i, int j) { return "p" + std::to_string(i) + "_" + std::to_string(j); };
    for (int i = 0; i <= n; ++i) {
        text += "{ ";
        for (int j = 0; j < n; ++j) text += (j ? " ; " : "") + at(i, j);
        text += " }.\n:- ";
        for (int j = 0; j < n; ++j) text += (j ? ", not " : "not ") + at(i, j);
        text += ".\n";
    }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i)
            for (int k = i + 1; k <= n; ++k) text += ":- " + at(i, j) + ", " + at(k, j) + ".\n";
    return parse_program(text);
}

std::vector<std::pair<Var, LitSet>> golden_numbering() {
    return {{Bc, {c}}, {Bnc, {-c}}, {Bnd, {-d}}, {Bad, {a, d}}, {Bbd, {b, d}}, {Bcd, {c, d}}, {BnanE, {-a, -e}}, {BcnE, {c, -e}}};
}

}  // namespace

TEST_CASE("the example program is inconsistent with a checkable proof") {
    Program p = example1();
    std::ostringstream out;
    SolverOptions o;
    o.verify_learned = true;
    auto r = solve(p, o, &out);
    CHECK(r.verdict == Verdict::Inconsistent);
    CHECK(out.str() == serialize_proof(r.proof));
    CHECK(check(p, r.proof).ok());
    CHECK(check_text(p, out.str()).ok());
    CHECK(r.proof.steps.back().type == StepType::Add);
    CHECK(r.proof.steps.back().delta.empty());
}

TEST_CASE("the example run learns the nogoods of the worked trace") {
    Program p = example1();
    SolverOptions o;
    o.body_numbering = golden_numbering();
    o.scripted_decisions = {a, -Bc};
    o.verify_learned = true;
    auto r = solve(p, o);
    REQUIRE(r.verdict == Verdict::Inconsistent);
    std::vector<Nogood> want{Nogood({-Bc, a}), Nogood({e, -BnanE}), Nogood({a}), Nogood({e})};
    CHECK(r.learned == want);
    CHECK(r.proof.steps.back().delta.empty());
    bool has_loop = false;
    for (const auto& s : r.proof.steps)
        if (s.type == StepType::Loop) has_loop = s.delta == std::vector<Lit>{a, b};
    CHECK(has_loop);
    CHECK(check(p, r.proof).ok());
}

TEST_CASE("consistent programs") {
    auto r = solve(parse_program("c :- not d.\nd :- not c.\n"));
    CHECK(r.verdict == Verdict::Consistent);
    CHECK(r.answer_set == std::vector<Var>{1});
    SolverOptions lf;
    lf.heuristic = Heuristic::LowestFalse;
    CHECK(solve(parse_program("c :- not d.\nd :- not c.\n"), lf).answer_set == std::vector<Var>{2});
    auto empty = solve(Program{});
    CHECK(empty.verdict == Verdict::Consistent);
    CHECK(empty.answer_set.empty());
    auto self = solve(parse_program("a :- a.\nb :- not a.\n"));
    CHECK(self.verdict == Verdict::Consistent);
    CHECK(self.answer_set == std::vector<Var>{2});
}

TEST_CASE("weight and choice rules") {
    Program p = parse_program("{ b ; c ; d }.\na :- 2 <= { b=1, c=1, not d=2 }.\n:- not a.\n:- not d.\n:- c.\n");
    auto r = solve(p);
    REQUIRE(r.verdict == Verdict::Inconsistent);
    CHECK(check(p, r.proof).ok());
    Program q = parse_program("{ b ; c ; d }.\na :- 2 <= { b=1, c=1, not d=2 }.\n:- not a.\n:- not d.\n");
    auto s = solve(q);
    REQUIRE(s.verdict == Verdict::Consistent);
    CHECK(is_answer_set(q, s.answer_set));
}

TEST_CASE("unsupported inputs") {
    CHECK_THROWS_AS(solve(parse_program("a | b.\n")), UnsupportedError);
    CHECK_THROWS_AS(solve(parse_program("a :- 1 <= { b=1 }.\nb :- a.\n")), UnsupportedError);
    CHECK_NOTHROW(solve(parse_program("a :- 1 <= { b=1 }.\nb :- c.\nc :- b.\n")));
    std::string big = "a :- 10 <= {";
    for (int i = 0; i < 20; ++i) big += (i ? ", x" : " x") + std::to_string(i) + "=1";
    CHECK_THROWS_AS(solve(parse_program(big + " }.\n")), UnsupportedError);
}

TEST_CASE("restarts log deletions the checker accepts") {
    Program p = pigeonhole(4);
    SolverOptions o;
    o.restarts = true;
    o.restart_unit = 4;
    auto r = solve(p, o);
    REQUIRE(r.verdict == Verdict::Inconsistent);
    std::size_t deletions = 0;
    for (const auto& s : r.proof.steps) deletions += s.type == StepType::Delete;
    CHECK(deletions > 0);
    CheckOptions strict;
    strict.strict_delete = true;
    CHECK(check(p, r.proof, strict).ok());
}

TEST_CASE("random decisions still give checkable proofs") {
    Program p = pigeonhole(3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SolverOptions o;
        o.heuristic = Heuristic::Random;
        o.seed = seed;
        o.verify_learned = true;
        auto r = solve(p, o);
        REQUIRE(r.verdict == Verdict::Inconsistent);
        CHECK(check(p, r.proof).ok());
    }
}

TEST_CASE("resource limits give no verdict") {
    SolverOptions o;
    o.max_conflicts = 1;
    auto r = solve(pigeonhole(4), o);
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(r.conflicts == 1);
}
