#include "aspdrupe/propagation.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "aspdrupe/checker.hpp"
#include "aspdrupe/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aspdrupe;
using namespace fixtures;

namespace {

// Nabla_6 of the golden proof: body definitions plus its first six steps.
std::vector<Nogood> nabla6() {
    Program p = example1();
    BodyRegistry reg(p);
    Proof proof = parse_proof(figure1(), p, reg);
    Checker ch(p);
    for (std::size_t i = 0; i < 14; ++i) REQUIRE(ch.step(proof.steps[i]));
    return ch.nogoods();
}

// Brute-force unit propagation by literal reading of the fixpoint.
PropagationResult naive_up(const std::vector<Nogood>& delta, const Assignment& assumptions) {
    std::vector<Lit> units;  // unit nogoods {u}
    for (Lit l : assumptions.entries()) units.push_back(-l);
    PropagationResult res;
    auto has = [&](Lit u) { return std::find(units.begin(), units.end(), u) != units.end(); };
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& n : delta) {
            std::vector<Lit> rest;
            for (Lit l : n.entries())
                if (!has(-l)) rest.push_back(l);
            if (rest.empty()) {
                res.status = PropagationResult::Status::Conflict;
                return res;
            }
            if (rest.size() == 1 && !has(rest[0])) {
                units.push_back(rest[0]);
                res.derived_units.push_back(rest[0]);
                grew = true;
            }
        }
        for (Lit u : units)
            if (has(-u)) {
                res.status = PropagationResult::Status::Conflict;
                return res;
            }
    }
    return res;
}

}  // namespace

TEST_CASE("unit propagation basics") {
    auto r = unit_propagate({Nogood({1, -2}), Nogood({2})});
    CHECK(r.status == PropagationResult::Status::Stable);
    CHECK(r.derived_units == std::vector<Lit>{2, 1});
    auto c = unit_propagate({Nogood({1}), Nogood({-1})});
    CHECK(c.status == PropagationResult::Status::Conflict);
    CHECK(c.conflict.has_value());
    CHECK(unit_propagate({Nogood(std::vector<Lit>{})}).status == PropagationResult::Status::Conflict);
    CHECK(unit_propagate({}).derived_units.empty());
}

TEST_CASE("RUP basics") {
    std::vector<Nogood> delta{Nogood({1, 2}), Nogood({-2, 3})};
    CHECK(is_rup(delta, Nogood({1, 2})));
    CHECK(is_rup(delta, Nogood({1, 3})));
    CHECK_FALSE(is_rup(delta, Nogood({1})));
    CHECK_FALSE(is_rup({}, Nogood({7})));
    delta.push_back(Nogood(std::vector<Lit>{}));
    CHECK(is_rup(delta, Nogood({7})));
}

TEST_CASE("sigma 7 of the golden proof is RUP through T c and T {c,d}") {
    auto delta = nabla6();
    Nogood sigma7({-Bc, a});
    CHECK(is_rup(delta, sigma7));
    auto up = unit_propagate(delta, Assignment({-Bc, a}));
    CHECK(up.status == PropagationResult::Status::Conflict);
    auto trace = rup_trace(delta, sigma7);
    REQUIRE(trace.has_value());
    CHECK(trace->units == std::vector<Lit>{c, Bcd});
    CHECK(trace->reduced == Nogood({a, -Bc, -Bcd}));
    CHECK_FALSE(rup_trace(delta, Nogood({a})).has_value());
}

TEST_CASE("engine propagation agrees with the literal fixpoint") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<Nogood> delta;
        for (int k = 1 + rng() % 10; k > 0; --k) {
            std::vector<Lit> es;
            for (int j = rng() % 4; j > 0; --j) {
                Lit l = 1 + static_cast<Lit>(rng() % 6);
                if (rng() % 2) l = -l;
                if (std::find(es.begin(), es.end(), -l) == es.end() && std::find(es.begin(), es.end(), l) == es.end())
                    es.push_back(l);
            }
            delta.emplace_back(es);
        }
        Assignment as;
        for (Var v = 1; v <= 6; ++v)
            if (rng() % 5 == 0) as.insert(rng() % 2 ? v : -v);
        auto got = unit_propagate(delta, as);
        auto want = naive_up(delta, as);
        REQUIRE(got.status == want.status);
        if (got.status == PropagationResult::Status::Stable) {
            std::set<Lit> g(got.derived_units.begin(), got.derived_units.end());
            std::set<Lit> w(want.derived_units.begin(), want.derived_units.end());
            CHECK(g == w);
        }
    }
}

TEST_CASE("engine levels, backtracking and removal") {
    Engine e(4);
    auto r1 = e.add(std::vector<Lit>{1, 2});
    e.add(std::vector<Lit>{-2, 3});
    CHECK_FALSE(e.propagate());
    e.new_level();
    e.assign(1, Engine::kDecision);
    CHECK_FALSE(e.propagate());
    CHECK(e.value(-2) == 1);
    CHECK(e.reason(2) == r1);
    CHECK(e.level(2) == 1);
    CHECK(e.is_reason(r1));
    e.backtrack(0);
    CHECK(e.value(2) == 0);
    CHECK_FALSE(e.is_reason(r1));
    e.remove(r1);
    e.new_level();
    e.assign(1, Engine::kDecision);
    CHECK_FALSE(e.propagate());
    CHECK(e.value(2) == 0);
    e.backtrack(0);
    auto r3 = e.add(std::vector<Lit>{-4});
    CHECK_FALSE(e.propagate());
    CHECK(e.value(4) == 1);
    CHECK(e.is_reason(r3));
    e.add(std::vector<Lit>{4});
    auto conflict = e.propagate();
    REQUIRE(conflict.has_value());
    CHECK(e.conflict_lits(*conflict) == std::vector<Lit>{4});
}

TEST_CASE("weight propagator examples") {
    Rule r = Rule::weight(a, 2, {{{b, false}, 1}, {{c, false}, 1}, {{d, true}, 2}});
    auto derived = [](const WeightPropagation& w) {
        std::set<Lit> out;
        for (const auto& x : std::get<std::vector<WeightDerivation>>(w)) out.insert(x.lit);
        return out;
    };
    CHECK(derived(weight_propagate(r, Assignment({-d}))) == std::set<Lit>{a});
    CHECK(derived(weight_propagate(r, Assignment({-a, b, d}))) == std::set<Lit>{-c});
    CHECK(derived(weight_propagate(r, Assignment())).empty());
    auto conflict = weight_propagate(r, Assignment({-a, -d}));
    REQUIRE(std::holds_alternative<WeightConflict>(conflict));
    CHECK(std::get<WeightConflict>(conflict).nogood.contains(-a));
    auto iii = weight_propagate(r, Assignment({-a, b, d}));
    for (const auto& x : std::get<std::vector<WeightDerivation>>(iii)) CHECK(x.reason == Nogood({-a, b, c}));
}

TEST_CASE("the weight propagator is stronger than unit propagation with a body variable") {
    // a :- 3 <= { b=2, c=1, d=1 }: T a forces b, since c and d reach only 2.
    Rule r = Rule::weight(a, 3, {{{b, false}, 2}, {{c, false}, 1}, {{d, false}, 1}});
    auto w = weight_propagate(r, Assignment({a}));
    REQUIRE(std::holds_alternative<std::vector<WeightDerivation>>(w));
    std::set<Lit> got;
    for (const auto& x : std::get<std::vector<WeightDerivation>>(w)) got.insert(x.lit);
    CHECK(got.count(b));

    // Completion with one body variable per minimal body: {b,c} and {b,d} as 6, 7.
    std::vector<Nogood> delta{Nogood({a, -6, -7}), Nogood({-a, 6}), Nogood({-a, 7}),
                              Nogood({-b, 6}),     Nogood({-c, 6}),  Nogood({b, c, -6}),
                              Nogood({-b, 7}),     Nogood({-d, 7}),  Nogood({b, d, -7})};
    auto up = unit_propagate(delta, Assignment({a}));
    CHECK(std::find(up.derived_units.begin(), up.derived_units.end(), -b) == up.derived_units.end());
}

namespace {

std::vector<Nogood> random_nogoods(std::mt19937_64& rng, int vars, int count, int width) {
    std::vector<Nogood> delta;
    for (int k = count; k > 0; --k) {
        std::vector<Lit> es;
        for (int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(width)); j > 0; --j) {
            Lit l = 1 + static_cast<Lit>(rng() % static_cast<unsigned>(vars));
            if (rng() % 2) l = -l;
            if (std::find(es.begin(), es.end(), -l) == es.end() && std::find(es.begin(), es.end(), l) == es.end())
                es.push_back(l);
        }
        delta.emplace_back(es);
    }
    return delta;
}

}  // namespace

TEST_CASE("derived units are consequences") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 500; ++iter) {
        auto delta = random_nogoods(rng, 8, 1 + static_cast<int>(rng() % 12), 3);
        auto r = unit_propagate(delta);
        if (r.status == PropagationResult::Status::Conflict) {
            CHECK(entails(delta, {Nogood(std::vector<Lit>{})}));
            continue;
        }
        for (Lit u : r.derived_units) CHECK(entails(delta, {Nogood({u})}));
    }
}

TEST_CASE("RUP is monotone and propagation is order independent") {
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 500; ++iter) {
        auto delta = random_nogoods(rng, 6, 1 + static_cast<int>(rng() % 10), 3);
        auto probe = random_nogoods(rng, 6, 1, 3).front();
        auto extra = random_nogoods(rng, 6, 3, 3);
        bool rup = is_rup(delta, probe);
        auto more = delta;
        more.insert(more.end(), extra.begin(), extra.end());
        if (rup) CHECK(is_rup(more, probe));

        auto shuffled = delta;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto r1 = unit_propagate(delta), r2 = unit_propagate(shuffled);
        CHECK(r1.status == r2.status);
        if (r1.status == PropagationResult::Status::Stable)
            CHECK(std::set<Lit>(r1.derived_units.begin(), r1.derived_units.end()) ==
                  std::set<Lit>(r2.derived_units.begin(), r2.derived_units.end()));
        CHECK(rup == is_rup(shuffled, probe));
    }
}
