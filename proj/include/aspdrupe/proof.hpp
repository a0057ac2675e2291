// ASP-DRUPE proof steps and their line format.
//
//   b j l1 .. lk 0        body variable j stands for the literal set {l1..lk}
//   a l1 .. lk 0          addition of a RUP nogood
//   c j a1 .. ak 0        completion rule nogood {F a1 .. F ak, T j}
//   s a j1 .. jk 0        completion support nogood {T a, F j1 .. F jk}
//   e x l1 .. lk 0        extension: fresh x defined as the nogood {l1..lk}
//   d l1 .. lk 0          deletion
//   l a1 .. ak 0          loop nogood for the loop {a1..ak}, first atom a1
//   u k a1 .. ak l1 .. lm 0   unfounded set {a1..ak} for assignment {l1..lm}
//
// Signed variables use the truth-value encoding: +v is T v, -v is F v.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aspdrupe/completion.hpp"
#include "aspdrupe/core.hpp"

namespace aspdrupe {

enum class StepType : char {
    Add = 'a',
    Rule = 'c',
    Support = 's',
    Extend = 'e',
    Delete = 'd',
    Loop = 'l',
    Unfounded = 'u',
    Body = 'b',
};

// Entries keep their written order so that serialization reproduces the input.
struct ProofStep {
    StepType type = StepType::Add;
    // a/d/e: the nogood; c: T body then F atoms; s: F bodies; l/u: T atoms.
    std::vector<Lit> delta;
    // s/e: the atom; l: the first loop atom; b: the body id.
    Var atom = 0;
    // u: the assignment A; b: the literal set.
    std::vector<Lit> extra;

    friend bool operator==(const ProofStep&, const ProofStep&) = default;

    static ProofStep add(std::vector<Lit> nogood);
    static ProofStep del(std::vector<Lit> nogood);
    static ProofStep rule(Var body, std::vector<Var> atoms);
    static ProofStep support(Var a, std::vector<Var> bodies);
    static ProofStep extend(Var x, std::vector<Lit> nogood);
    static ProofStep loop(std::vector<Var> atoms);
    static ProofStep unfounded(std::vector<Var> atoms, std::vector<Lit> assignment);
    static ProofStep body(Var id, LitSet lits);
};

struct Proof {
    std::vector<ProofStep> steps;
    // 1-based source line of each step (0 when built in memory).
    std::vector<std::size_t> lines;

    friend bool operator==(const Proof& a, const Proof& b) { return a.steps == b.steps; }
};

// Decodes proof text against P's numbering and Bod(P). Rejects malformed
// lines, unknown ids, body redefinition, bodies outside Bod(P), and references
// to bodies before their declaration. Throws ParseError.
Proof parse_proof(std::string_view text, const Program& p, const BodyRegistry& reg);

std::string serialize_step(const ProofStep& s);
std::string serialize_proof(const Proof& proof);

// Appends each step to a stream as it is produced, flushing per line.
class ProofWriter {
public:
    explicit ProofWriter(std::ostream* out = nullptr) : out_(out) {}
    void write(const ProofStep& s);
    const Proof& proof() const { return proof_; }
    Proof take() { return std::move(proof_); }

private:
    std::ostream* out_;
    Proof proof_;
};

}  // namespace aspdrupe
