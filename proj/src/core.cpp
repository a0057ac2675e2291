#include "aspdrupe/core.hpp"

#include <algorithm>

namespace aspdrupe {

void canonicalize(LitSet& s) {
    std::sort(s.begin(), s.end(), lit_less);
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

std::string to_string(const LitSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

std::size_t LitSetHash::operator()(const std::vector<Lit>& v) const noexcept {
    std::size_t h = v.size();
    for (Lit l : v) h ^= static_cast<std::size_t>(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t col)
    : std::runtime_error(col ? "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg
                             : "line " + std::to_string(line) + ": " + msg),
      line_(line), col_(col) {}

LitSet Rule::body() const {
    LitSet b;
    if (kind == RuleKind::Weight) {
        for (const auto& wl : weights) b.push_back(wl.lit.tv());
    } else {
        for (Var a : pos) b.push_back(a);
        for (Var a : neg) b.push_back(-a);
    }
    canonicalize(b);
    return b;
}

std::uint64_t Rule::weight_of(Literal l) const {
    for (const auto& wl : weights)
        if (wl.lit == l) return wl.weight;
    return 0;
}

Rule Rule::normal(Var head, std::vector<Var> pos, std::vector<Var> neg) {
    return disjunctive({head}, std::move(pos), std::move(neg));
}

Rule Rule::disjunctive(std::vector<Var> head, std::vector<Var> pos, std::vector<Var> neg) {
    Rule r;
    r.kind = RuleKind::Disjunctive;
    r.head = std::move(head);
    r.pos = std::move(pos);
    r.neg = std::move(neg);
    return r;
}

Rule Rule::choice(std::vector<Var> head, std::vector<Var> pos, std::vector<Var> neg) {
    Rule r = disjunctive(std::move(head), std::move(pos), std::move(neg));
    r.kind = RuleKind::Choice;
    return r;
}

Rule Rule::weight(Var head, std::uint64_t bound, std::vector<WeightedLiteral> lits) {
    Rule r;
    r.kind = RuleKind::Weight;
    r.head = {head};
    r.bound = bound;
    for (const auto& wl : lits) (wl.lit.negated ? r.neg : r.pos).push_back(wl.lit.atom);
    r.weights = std::move(lits);
    return r;
}

Var Program::atom(const std::string& name) {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    names_.push_back(name);
    Var id = static_cast<Var>(names_.size());
    ids_.emplace(name, id);
    return id;
}

Var Program::fresh_atom(const std::string& prefix) {
    for (std::size_t k = 1;; ++k) {
        std::string n = prefix + std::to_string(k);
        if (!ids_.count(n)) return atom(n);
    }
}

Var Program::find(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? 0 : it->second;
}

const std::string& Program::name(Var a) const {
    if (!has_atom(a)) throw ContractError("unknown atom id " + std::to_string(a));
    return names_[static_cast<std::size_t>(a) - 1];
}

void Program::add_rule(Rule r) {
    if (r.head.empty()) throw ContractError("rule without head atom");
    if (r.kind == RuleKind::Weight && r.head.size() != 1) throw ContractError("weight rule must have one head atom");
    auto check = [&](Var a) {
        if (!has_atom(a)) throw ContractError("rule references unknown atom id " + std::to_string(a));
    };
    for (Var a : r.head) check(a);
    for (Var a : r.pos) check(a);
    for (Var a : r.neg) check(a);
    rules_.push_back(std::move(r));
}

bool Program::is_normal() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.is_normal(); });
}

bool Program::has_disjunction() const {
    return std::any_of(rules_.begin(), rules_.end(),
                       [](const Rule& r) { return r.kind == RuleKind::Disjunctive && r.head.size() > 1; });
}

Assignment::Assignment(std::vector<Lit> entries) {
    for (Lit l : entries) insert(l);
}

void Assignment::insert(Lit l) {
    if (l == 0) throw ContractError("signed variable 0 is not valid");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), l, lit_less);
    if (it != entries_.end() && *it == l) return;
    if ((it != entries_.end() && *it == -l) || (it != entries_.begin() && *(it - 1) == -l))
        throw ContractError("assignment would contain both T and F of variable " + std::to_string(var_of(l)));
    entries_.insert(it, l);
}

bool Assignment::contains(Lit l) const {
    return std::binary_search(entries_.begin(), entries_.end(), l, lit_less);
}

bool Assignment::assigns(Var v) const { return contains(v) || contains(-v); }

std::vector<Var> Assignment::true_vars() const {
    std::vector<Var> out;
    for (Lit l : entries_)
        if (l > 0) out.push_back(l);
    return out;
}

std::vector<Var> Assignment::false_vars() const {
    std::vector<Var> out;
    for (Lit l : entries_)
        if (l < 0) out.push_back(-l);
    return out;
}

Assignment induced_assignment(const Program& p, const std::vector<Literal>& body) {
    Assignment a;
    for (const Literal& l : body) {
        if (!p.has_atom(l.atom)) throw ContractError("unknown atom id " + std::to_string(l.atom));
        a.insert(l.tv());
    }
    return a;
}

}  // namespace aspdrupe
