#include "aspdrupe/loops.hpp"

#include <map>
#include <random>
#include <set>

#include "aspdrupe/fuzz.hpp"
#include "aspdrupe/program_io.hpp"
#include "aspdrupe/solver.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aspdrupe;
using namespace fixtures;

namespace {

BodyRegistry golden_registry(const Program& p) {
    BodyRegistry reg(p);
    for (auto [id, body] : std::vector<std::pair<Var, LitSet>>{{Bc, {c}}, {Bnc, {-c}}, {Bnd, {-d}}, {Bad, {a, d}},
                                                               {Bbd, {b, d}}, {Bcd, {c, d}}, {BnanE, {-a, -e}}, {BcnE, {c, -e}}})
        reg.declare(id, body);
    return reg;
}

// Strong connectivity of U by Floyd-Warshall closure over the edge list.
bool brute_is_loop(const Program& p, const std::vector<Var>& u) {
    std::size_t n = p.num_atoms();
    std::vector<std::vector<char>> r(n + 1, std::vector<char>(n + 1, 0));
    std::set<Var> in(u.begin(), u.end());
    bool edge = false;
    for (const Rule& rule : p.rules()) {
        std::vector<Var> pos = rule.pos;
        for (Var h : rule.head)
            for (Var x : pos)
                if (in.count(h) && in.count(x)) r[x][h] = 1, edge = true;
    }
    if (!edge) return false;
    for (Var k : u)
        for (Var i : u)
            for (Var j : u)
                if (r[i][k] && r[k][j]) r[i][j] = 1;
    for (Var i : u)
        for (Var j : u)
            if (i != j && !r[i][j]) return false;
    return u.size() > 1 || r[u[0]][u[0]];
}

}  // namespace

TEST_CASE("dependency graph of the example program") {
    Program p = example1();
    DependencyGraph g(p);
    std::set<std::pair<Var, Var>> edges;
    for (auto x : g.edges()) edges.insert(x);
    CHECK(edges == std::set<std::pair<Var, Var>>{{b, a}, {d, a}, {a, b}, {d, b}, {c, a}, {c, b}, {c, e}});
    CHECK_FALSE(g.is_tight());
    CHECK(g.on_cycle(a));
    CHECK_FALSE(g.on_cycle(c));
    CHECK(DependencyGraph(parse_program("c :- not d.\nd :- not c.\n")).edges().empty());
    DependencyGraph self(parse_program("a :- a.\n"));
    CHECK(self.edges() == std::vector<std::pair<Var, Var>>{{1, 1}});
    CHECK_FALSE(self.is_tight());
}

TEST_CASE("loops of the example program") {
    Program p = example1();
    CHECK(is_loop(p, {a, b}));
    CHECK_FALSE(is_loop(p, {a}));
    CHECK_FALSE(is_loop(p, {a, e}));
    CHECK(is_loop(parse_program("a :- a.\n"), {1}));
}

TEST_CASE("is_loop agrees with a transitive-closure check") {
    std::mt19937_64 rng(5);
    FuzzConfig cfg{5, 8, 3, 0.3, 0.0};
    for (int iter = 0; iter < 300; ++iter) {
        Program p = random_program(cfg, rng);
        for (std::uint32_t m = 1; m < 32; ++m) {
            std::vector<Var> u;
            for (Var v = 1; v <= 5; ++v)
                if (m & (1u << (v - 1))) u.push_back(v);
            CHECK(is_loop(p, u) == brute_is_loop(p, u));
        }
    }
}

TEST_CASE("external bodies and loop nogoods") {
    Program p = example1();
    BodyRegistry reg = golden_registry(p);
    auto eb = external_bodies(reg, {a, b});
    CHECK(std::set<LitSet>(eb.begin(), eb.end()) == std::set<LitSet>{{c}, {c, d}});
    CHECK(loop_nogood(reg, a, {a, b}) == Nogood({a, -Bc, -Bcd}));
    CHECK(loop_nogood(reg, b, {a, b}) == Nogood({b, -Bc, -Bcd}));

    Program self = parse_program("a :- a.\n");
    BodyRegistry rs(self);
    rs.assign_sequential_ids();
    CHECK(external_bodies(rs, {1}).empty());
    CHECK(loop_nogood(rs, 1, {1}) == Nogood({1}));

    Program neg = parse_program("a :- not b.\n");
    BodyRegistry rn(neg);
    CHECK(external_bodies(rn, {1, 2}) == std::vector<LitSet>{{-2}});
}

TEST_CASE("unfounded sets") {
    Program p = example1();
    CHECK(is_unfounded_set(p, Assignment({-c}), {a, b}));
    CHECK_FALSE(is_unfounded_set(p, Assignment(), {c}));
    CHECK(is_unfounded_set(parse_program("a | b.\n"), Assignment({2}), {1}));
    CHECK_FALSE(is_unfounded_set(parse_program("a | b.\n"), Assignment(), {1}));
    // Refuting the body {c,d} through its body variable only.
    auto refuted = [](const LitSet& s) { return s == LitSet{c, d} || s == LitSet{c}; };
    CHECK(is_unfounded_set(p, Assignment({Bc}), {a, b}, refuted));
    CHECK_FALSE(is_unfounded_set(p, Assignment({Bc}), {a, b}));
    Program ch = parse_program("{ a } :- b.\nb :- a.\n");
    CHECK(is_unfounded_set(ch, Assignment({-2}), {1}));
    CHECK_FALSE(is_unfounded_set(ch, Assignment({2}), {1}));
}

TEST_CASE("the solver's unfounded-set search") {
    Program p = example1();
    BodyRegistry reg = golden_registry(p);
    DependencyGraph g(p);
    // c false: bodies {c} and {c,d} false.
    std::map<Var, int> val{{c, -1}, {Bc, -1}, {Bcd, -1}};
    auto value = [&](Lit l) {
        auto it = val.find(var_of(l));
        int v = it == val.end() ? 0 : it->second;
        return l > 0 ? v : -v;
    };
    auto u = unfounded_atoms(g, reg, value);
    CHECK(u == std::vector<Var>{a, b});
    CHECK(is_unfounded_set(p, Assignment({-c, -Bc, -Bcd}), u));
    CHECK(source_loop(g, u) == std::vector<Var>{a, b});
    val[c] = 1;
    val[Bc] = 1;
    CHECK(unfounded_atoms(g, reg, value).empty());

    Program self = parse_program("a :- a.\n");
    BodyRegistry rs(self);
    rs.assign_sequential_ids();
    auto none = [](Lit) { return 0; };
    CHECK(unfounded_atoms(DependencyGraph(self), rs, none) == std::vector<Var>{1});
    Program tight = parse_program("c :- not d.\nd :- not c.\n");
    BodyRegistry rt(tight);
    rt.assign_sequential_ids();
    CHECK(unfounded_atoms(DependencyGraph(tight), rt, none).empty());
}
