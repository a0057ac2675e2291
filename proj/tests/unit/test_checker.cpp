#include "aspdrupe/checker.hpp"

#include <sstream>

#include "aspdrupe/program_io.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aspdrupe;
using namespace fixtures;

namespace {

std::string replace_line(const std::string& text, const std::string& from, const std::string& to) {
    std::string out = text;
    auto pos = out.find(from);
    REQUIRE(pos != std::string::npos);
    out.replace(pos, from.size(), to);
    return out;
}

std::string keep_types(const std::string& text, const std::string& types) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (types.find(line[0]) != std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("the golden proof is accepted") {
    Program p = example1();
    auto r = check_text(p, figure1());
    CHECK(r.ok());
    CHECK(r.reason.empty());
}

TEST_CASE("the golden proof without its final line fails the final test") {
    Program p = example1();
    std::string text = figure1();
    text.erase(text.rfind("a 0\n"));
    auto r = check_text(p, text);
    CHECK(r.outcome == CheckResult::Outcome::Error);
    CHECK(r.step == 0);
    CHECK(r.reason == "the empty nogood was never added");
}

TEST_CASE("a non-loop in an l line is rejected at that step") {
    Program p = example1();
    auto r = check_text(p, replace_line(figure1(), "l 1 2 0", "l 1 5 0"));
    CHECK(r.outcome == CheckResult::Outcome::Error);
    CHECK(r.step == 14);
    CHECK(r.line == 14);
}

TEST_CASE("step errors") {
    Program p = example1();
    std::string g = figure1();
    // Not RUP: the loop nogood is still missing.
    auto r = check_text(p, replace_line(g, "l 1 2 0\n", ""));
    CHECK(r.outcome == CheckResult::Outcome::Error);
    CHECK(r.reason == "nogood is not RUP");
    // {c} does not support b.
    r = check_text(p, replace_line(g, "c 6 1 0", "c 6 2 0"));
    CHECK(r.outcome == CheckResult::Outcome::Error);
    // Incomplete support list.
    r = check_text(p, replace_line(g, "s 1 10 6 0", "s 1 10 0"));
    CHECK(r.outcome == CheckResult::Outcome::Error);
    CHECK(r.step == 9);
    // Extension variable that clashes with a body id.
    r = check_text(p, replace_line(g, "a 1 0\n", "e 6 1 0\na 1 0\n"));
    CHECK(r.outcome != CheckResult::Outcome::Success);
    // Parse failures.
    CHECK(check_text(p, "a 0").outcome == CheckResult::Outcome::ParseFailure);
    CHECK(check_text(p, "").outcome == CheckResult::Outcome::Error);
}

TEST_CASE("an empty nogood only by RUP") {
    Program p = parse_program("a.\n");
    CHECK(check_text(p, "a 0\n").outcome == CheckResult::Outcome::Error);
    Program q = parse_program("a :- not a.\n");
    CHECK_FALSE(check_text(q, "b 2 -1 0\ns 1 2 0\nc 2 1 0\na 0\n").ok());
    CHECK(check_text(q, "b 2 -1 0\ns 1 2 0\nc 2 1 0\na 1 0\na 0\n").ok());
}

TEST_CASE("preloaded completion needs only body, loop and add lines") {
    Program p = example1();
    CheckOptions pre;
    pre.preloaded_completion = true;
    std::string slim = keep_types(figure1(), "bla");
    CHECK(check_text(p, slim, pre).ok());
    CHECK_FALSE(check_text(p, slim).ok());
    CHECK(check_text(p, figure1(), pre).ok());
}

TEST_CASE("extension variables") {
    Program p = example1();
    // x <-> (a and not b).
    std::string text = "e 20 1 -2 0\na 20 1 -2 0\n";
    CHECK_FALSE(check_text(p, text).ok());
    Checker ch(p);
    BodyRegistry reg(p);
    Proof pr = parse_proof(text, p, reg);
    REQUIRE(ch.step(pr.steps[0]));
    CHECK(ch.is_rup({-20, 1, -2}));
    CHECK_FALSE(ch.is_rup({20, 1, -2}));
    CHECK_FALSE(ch.is_rup({-20, 1}));
    CHECK(ch.extension_nogoods().size() == 3);
    CHECK(ch.nogoods().size() == 3);
    CHECK_FALSE(ch.step(ProofStep::extend(20, {1})));
    CHECK_FALSE(ch.step(ProofStep::extend(3, {1})));
}

TEST_CASE("deletion") {
    Program p = example1();
    std::string g = figure1();
    // Deleting the loop nogood before the step that needs it.
    auto r = check_text(p, replace_line(g, "a -6 1 0\n", "d 1 -6 -11 0\na -6 1 0\n"));
    CHECK(r.outcome == CheckResult::Outcome::Error);
    // Deleting an absent nogood is a no-op unless strict.
    std::string absent = replace_line(g, "a 0\n", "d 1 2 0\na 0\n");
    CHECK(check_text(p, absent).ok());
    CheckOptions strict;
    strict.strict_delete = true;
    auto s = check_text(p, absent, strict);
    CHECK(s.outcome == CheckResult::Outcome::Error);
    CHECK(s.reason == "deleted nogood is not present");
    // Two copies: deleting one keeps the other.
    std::string twice = replace_line(g, "a 1 0\n", "a 1 0\na 1 0\nd 1 0\n");
    CHECK(check_text(p, twice).ok());
}

TEST_CASE("unfounded-set steps") {
    Program p = parse_program("a :- b.\nb :- a.\n:- not a.\n");
    CHECK(check_text(p, "b 4 -1 -3 0\ns 3 4 0\nc 4 3 0\nu 2 1 2 1 0\na 3 0\na 0\n").ok());
    // The step is valid on its own, but nothing refutes {T b}.
    CHECK(check_text(p, "u 2 1 2 2 0\n").outcome == CheckResult::Outcome::Error);
    Checker ch(p);
    CHECK(ch.step(ProofStep::unfounded({1, 2}, {2})));
    CHECK_FALSE(ch.step(ProofStep::unfounded({1, 2}, {-1, -2})));
    CHECK(ch.error() == "assignment makes no atom of the unfounded set true");
    Program q = parse_program("a :- not b.\nb :- not a.\n");
    Checker cq(q);
    CHECK_FALSE(cq.step(ProofStep::unfounded({1}, {1})));
    CHECK(cq.step(ProofStep::unfounded({1}, {1, 2})));
}

TEST_CASE("a disjunctive program") {
    Program p = parse_program("a | b.\n:- a.\n:- b.\n");
    std::string text =
        "b 5 -2 0\nb 6 -1 0\nb 7 1 -3 0\nb 8 2 -4 0\n"
        "s 1 5 0\ns 2 6 0\nc 5 1 0\ns 3 7 0\nc 7 3 0\ns 4 8 0\nc 8 4 0\n"
        "a 1 3 0\na 1 0\na 2 4 0\na 2 0\na 0\n";
    CHECK(check_text(p, text).ok());
    CHECK_FALSE(check_text(p, replace_line(text, "a 2 4 0\n", "")).ok());
}

TEST_CASE("nogood multiset after the first six steps") {
    Program p = example1();
    BodyRegistry reg(p);
    Proof pr = parse_proof(figure1(), p, reg);
    Checker ch(p);
    for (std::size_t i = 0; i < 14; ++i) REQUIRE(ch.step(pr.steps[i]));
    // 8 bodies with 13 literals in all give 8 + 13 nogoods, then six steps.
    CHECK(ch.nogoods().size() == 8 + 13 + 6);
    CHECK(ch.is_rup({-Bc, a}));
    CHECK_FALSE(ch.is_rup({a}));
    CHECK_FALSE(ch.has_empty_nogood());
}
