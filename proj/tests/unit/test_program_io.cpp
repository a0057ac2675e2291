#include "aspdrupe/program_io.hpp"

#include "aspdrupe/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aspdrupe;

TEST_CASE("atoms are numbered by first occurrence") {
    Program p = parse_program("c :- not d.\nd :- not c.\n");
    REQUIRE(p.rules().size() == 2);
    CHECK(p.find("c") == 1);
    CHECK(p.find("d") == 2);
    CHECK(p.rules()[0] == Rule::normal(1, {}, {2}));
}

TEST_CASE("an atoms declaration fixes the numbering") {
    Program p = fixtures::example1();
    CHECK(p.num_atoms() == 5);
    CHECK(p.rules().size() == 8);
    CHECK(emit_dictionary(p) == "1 a\n2 b\n3 c\n4 d\n5 e\n");
    CHECK(parse_program("#atoms x y.\ny :- x.\n").find("y") == 2);
    CHECK_THROWS_AS(parse_program("#atoms x, y.\n"), ParseError);
}

TEST_CASE("rule forms") {
    Program p = parse_program("a :- 3 <= { b=1, c=2, not d=1 }.\n{ x ; y } :- b, ~c.\nu | v.\n");
    const auto& rs = p.rules();
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].kind == RuleKind::Weight);
    CHECK(rs[0].bound == 3);
    CHECK(rs[0].weights.size() == 3);
    CHECK(rs[0].weight_of({p.find("d"), true}) == 1);
    CHECK(rs[1].kind == RuleKind::Choice);
    CHECK(rs[1].head.size() == 2);
    CHECK(rs[1].neg == std::vector<Var>{p.find("c")});
    CHECK(rs[2].kind == RuleKind::Disjunctive);
    CHECK(rs[2].head.size() == 2);
}

TEST_CASE("constraints get generated atoms after the user atoms") {
    Program p = parse_program(":- a, not b.\nc :- a.\n");
    Var bot = p.find("__bot1");
    CHECK(bot == 4);
    CHECK(p.rules()[0] == Rule::normal(bot, {1}, {2, bot}));
    CHECK(emit_dictionary(p) == "1 a\n2 b\n3 c\n4 __bot1\n");
}

TEST_CASE("empty program") {
    Program p = parse_program("% nothing\n\n");
    CHECK(p.num_atoms() == 0);
    CHECK(emit_dictionary(p).empty());
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_program("a.\nb :- c\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 7);
    }
    CHECK_THROWS_AS(parse_program("a :- 2 <= { b=1, b=1 }.\n"), ParseError);
    CHECK_THROWS_AS(parse_program("a | b :- 1 <= { c=1 }.\n"), ParseError);
    CHECK_THROWS_AS(parse_program("a :- not.\n"), ParseError);
    CHECK_THROWS_AS(parse_program("a. b.\n"), ParseError);
    CHECK_THROWS_AS(parse_program("a :- b $ c.\n"), ParseError);
}

TEST_CASE("printing round-trips") {
    for (const char* text : {"a :- b, d.\nb.\n", ":- x.\n{ p ; q } :- not r.\n", "a :- 2 <= { b=1, not c=2 }.\nu | v :- w.\n"}) {
        Program p = parse_program(text);
        std::string once = print_program(p);
        Program q = parse_program(once);
        CHECK(print_program(q) == once);
        CHECK(emit_dictionary(q) == emit_dictionary(p));
        CHECK(q.rules() == p.rules());
        CHECK(enumerate_answer_sets(q) == enumerate_answer_sets(p));
    }
}
