// Shared domain types: atoms, rules, programs, signed variables, nogoods.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace aspdrupe {

// Atoms, body variables and fresh variables share one id space starting at 1.
using Var = std::int32_t;
// A signed variable in truth-value encoding: +v is T v, -v is F v.
using Lit = std::int32_t;

inline constexpr Lit complement(Lit l) { return -l; }
inline constexpr Var var_of(Lit l) { return l < 0 ? -l : l; }
inline constexpr bool is_true_lit(Lit l) { return l > 0; }
inline constexpr Lit make_lit(Var v, bool truth) { return truth ? v : -v; }

// Canonical order on signed variables: by variable, then F before T.
inline bool lit_less(Lit a, Lit b) {
    Var va = var_of(a), vb = var_of(b);
    return va != vb ? va < vb : a < b;
}

// A set of body literals, stored as its induced assignment (atom a -> +a,
// "not a" -> -a) in canonical order. May contain both polarities of an atom.
using LitSet = std::vector<Lit>;

void canonicalize(LitSet& s);
std::string to_string(const LitSet& s);

struct LitSetHash {
    std::size_t operator()(const std::vector<Lit>& v) const noexcept;
};

////////////////////////////////////////////////////////////////////////////////
// Errors
////////////////////////////////////////////////////////////////////////////////

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }
private:
    std::size_t line_, col_;
};

// Violated precondition of a public operation.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Input outside the supported fragment (e.g. disjunctive solving).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An explicit resource guard was exceeded.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

////////////////////////////////////////////////////////////////////////////////
// Programs
////////////////////////////////////////////////////////////////////////////////

struct Literal {
    Var atom = 0;
    bool negated = false;

    Lit tv() const { return make_lit(atom, !negated); }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

enum class RuleKind { Disjunctive, Choice, Weight };

struct WeightedLiteral {
    Literal lit;
    std::uint64_t weight = 0;
    friend bool operator==(const WeightedLiteral&, const WeightedLiteral&) = default;
};

struct Rule {
    RuleKind kind = RuleKind::Disjunctive;
    std::vector<Var> head;
    std::vector<Var> pos;  // B+ (for weight rules: atoms of positive weighted literals)
    std::vector<Var> neg;  // B- (for weight rules: atoms of negative weighted literals)
    std::uint64_t bound = 0;
    std::vector<WeightedLiteral> weights;

    // B_r as an induced assignment, canonical.
    LitSet body() const;
    std::uint64_t weight_of(Literal l) const;
    bool is_normal() const { return kind == RuleKind::Disjunctive && head.size() <= 1; }

    static Rule normal(Var head, std::vector<Var> pos, std::vector<Var> neg);
    static Rule disjunctive(std::vector<Var> head, std::vector<Var> pos, std::vector<Var> neg);
    static Rule choice(std::vector<Var> head, std::vector<Var> pos, std::vector<Var> neg);
    static Rule weight(Var head, std::uint64_t bound, std::vector<WeightedLiteral> lits);

    friend bool operator==(const Rule&, const Rule&) = default;
};

class Program {
public:
    // Adds a named atom, or returns the existing id of that name.
    Var atom(const std::string& name);
    // Adds an atom with a generated name of the form <prefix><k> not yet in use.
    Var fresh_atom(const std::string& prefix);
    Var find(const std::string& name) const;  // 0 if absent

    void add_rule(Rule r);

    std::size_t num_atoms() const { return names_.size(); }
    const std::string& name(Var a) const;
    bool has_atom(Var a) const { return a >= 1 && static_cast<std::size_t>(a) <= names_.size(); }
    const std::vector<Rule>& rules() const { return rules_; }
    bool is_normal() const;
    bool has_disjunction() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Var> ids_;
    std::vector<Rule> rules_;
};

////////////////////////////////////////////////////////////////////////////////
// Assignments and nogoods
////////////////////////////////////////////////////////////////////////////////

// A consistent set of signed variables, canonically ordered.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::vector<Lit> entries);  // throws ContractError on clash

    void insert(Lit l);  // throws ContractError on clash
    bool contains(Lit l) const;
    bool assigns(Var v) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Lit>& entries() const { return entries_; }
    std::vector<Var> true_vars() const;
    std::vector<Var> false_vars() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<Lit> entries_;
};

// A nogood has the same representation as an assignment; the empty nogood is box.
using Nogood = Assignment;

Assignment induced_assignment(const Program& p, const std::vector<Literal>& body);

}  // namespace aspdrupe
