#include "aspdrupe/proof.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace aspdrupe {

ProofStep ProofStep::add(std::vector<Lit> nogood) { return {StepType::Add, std::move(nogood), 0, {}}; }
ProofStep ProofStep::del(std::vector<Lit> nogood) { return {StepType::Delete, std::move(nogood), 0, {}}; }

ProofStep ProofStep::rule(Var body, std::vector<Var> atoms) {
    ProofStep s{StepType::Rule, {body}, 0, {}};
    for (Var a : atoms) s.delta.push_back(-a);
    return s;
}

ProofStep ProofStep::support(Var a, std::vector<Var> bodies) {
    ProofStep s{StepType::Support, {}, a, {}};
    for (Var b : bodies) s.delta.push_back(-b);
    return s;
}

ProofStep ProofStep::extend(Var x, std::vector<Lit> nogood) { return {StepType::Extend, std::move(nogood), x, {}}; }

ProofStep ProofStep::loop(std::vector<Var> atoms) {
    if (atoms.empty()) throw ContractError("loop step needs at least one atom");
    Var first = atoms.front();
    return {StepType::Loop, std::vector<Lit>(atoms.begin(), atoms.end()), first, {}};
}

ProofStep ProofStep::unfounded(std::vector<Var> atoms, std::vector<Lit> assignment) {
    return {StepType::Unfounded, std::vector<Lit>(atoms.begin(), atoms.end()), 0, std::move(assignment)};
}

ProofStep ProofStep::body(Var id, LitSet lits) { return {StepType::Body, {}, id, std::move(lits)}; }

namespace {

class ProofParser {
public:
    ProofParser(const Program& p, const BodyRegistry& reg) : p_(p), reg_(reg) {}

    ProofStep line(std::string_view text, std::size_t lineno) {
        line_ = lineno;
        if (text.empty()) fail("empty line");
        std::vector<long long> nums;
        if (text.size() < 2 || text[1] != ' ') fail("expected a step type followed by a space");
        char t = text[0];
        std::size_t pos = 2;
        while (pos <= text.size()) {
            std::size_t end = text.find(' ', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view tok = text.substr(pos, end - pos);
            if (tok.empty()) fail("tokens must be separated by single spaces");
            long long v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("not an integer: '" + std::string(tok) + "'");
            if (v > INT32_MAX || v < -INT32_MAX) fail("integer out of range");
            nums.push_back(v);
            pos = end + 1;
        }
        if (nums.empty() || nums.back() != 0) fail("line must end with the terminator 0");
        nums.pop_back();
        for (long long v : nums)
            if (v == 0) fail("0 may only appear as the terminator");
        std::vector<Lit> ns(nums.begin(), nums.end());

        switch (t) {
            case 'b': return body(ns);
            case 'a': return ProofStep::add(nogood(ns, 0));
            case 'd': return ProofStep::del(nogood(ns, 0));
            case 'c': {
                if (ns.size() < 2) fail("c line needs a body id and at least one atom");
                Var b = declared_body(ns[0]);
                std::vector<Var> atoms;
                for (std::size_t i = 1; i < ns.size(); ++i) atoms.push_back(atom(ns[i]));
                dedup(atoms);
                return ProofStep::rule(b, atoms);
            }
            case 's': {
                if (ns.empty()) fail("s line needs an atom");
                Var a = atom(ns[0]);
                std::vector<Var> bodies;
                for (std::size_t i = 1; i < ns.size(); ++i) bodies.push_back(declared_body(ns[i]));
                dedup(bodies);
                return ProofStep::support(a, bodies);
            }
            case 'e': {
                if (ns.empty()) fail("e line needs a variable");
                if (ns[0] < 0) fail("extension variable must be positive");
                Var x = ns[0];
                auto n = nogood(ns, 1);
                if (!known(x)) ext_.insert(x);
                return ProofStep::extend(x, n);
            }
            case 'l': {
                if (ns.empty()) fail("l line needs at least one atom");
                std::vector<Var> atoms;
                for (Lit v : ns) atoms.push_back(atom(v));
                dedup(atoms);
                return ProofStep::loop(atoms);
            }
            case 'u': {
                if (ns.empty() || ns[0] < 1) fail("u line needs a positive set size");
                auto k = static_cast<std::size_t>(ns[0]);
                if (k + 1 > ns.size()) fail("u line lists fewer atoms than announced");
                std::vector<Var> atoms;
                for (std::size_t i = 1; i <= k; ++i) atoms.push_back(atom(ns[i]));
                dedup(atoms);
                std::vector<Lit> rest(ns.begin() + static_cast<long>(k) + 1, ns.end());
                if (rest.empty()) fail("u line needs a nonempty assignment");
                return ProofStep::unfounded(atoms, nogood(rest, 0));
            }
            default:
                fail(std::string("unknown step type '") + t + "'");
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_); }

    bool known(Var v) const { return p_.has_atom(v) || bodies_.count(v) || ext_.count(v); }

    Var atom(Lit v) const {
        if (v < 0 || !p_.has_atom(v)) fail("expected a program atom, got " + std::to_string(v));
        return v;
    }

    Var declared_body(Lit v) const {
        if (v < 0) fail("expected a body id, got " + std::to_string(v));
        if (!bodies_.count(v)) fail("body id " + std::to_string(v) + " used before its declaration");
        return v;
    }

    template <class T>
    static void dedup(std::vector<T>& v) {
        std::vector<T> out;
        for (T x : v)
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        v = std::move(out);
    }

    std::vector<Lit> nogood(const std::vector<Lit>& ns, std::size_t from) const {
        std::vector<Lit> out;
        for (std::size_t i = from; i < ns.size(); ++i) {
            Lit l = ns[i];
            if (!known(var_of(l))) fail("unknown variable id " + std::to_string(var_of(l)));
            if (std::find(out.begin(), out.end(), -l) != out.end())
                fail("variable " + std::to_string(var_of(l)) + " occurs with both signs");
            if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        }
        return out;
    }

    ProofStep body(const std::vector<Lit>& ns) {
        if (ns.empty()) fail("b line needs a body id");
        Var id = ns[0];
        if (id < 0) fail("body id must be positive");
        if (p_.has_atom(id)) fail("body id " + std::to_string(id) + " is a program atom");
        if (bodies_.count(id)) fail("body id " + std::to_string(id) + " is redefined");
        if (ext_.count(id)) fail("body id " + std::to_string(id) + " is already in use");
        LitSet lits;
        for (std::size_t i = 1; i < ns.size(); ++i) {
            if (!p_.has_atom(var_of(ns[i]))) fail("body literal " + std::to_string(ns[i]) + " is not a program atom");
            lits.push_back(ns[i]);
        }
        LitSet canon = lits;
        canonicalize(canon);
        if (!reg_.in_bod(canon)) fail("body " + to_string(canon) + " is not an induced body of the program");
        bodies_.insert(id);
        dedup(lits);
        return ProofStep::body(id, lits);
    }

    const Program& p_;
    const BodyRegistry& reg_;
    std::unordered_set<Var> bodies_, ext_;
    std::size_t line_ = 0;
};

void append_ints(std::string& out, const std::vector<Lit>& v) {
    for (Lit l : v) {
        out += ' ';
        out += std::to_string(l);
    }
}

}  // namespace

Proof parse_proof(std::string_view text, const Program& p, const BodyRegistry& reg) {
    Proof proof;
    if (text.empty()) return proof;
    if (text.back() != '\n') {
        std::size_t n = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
        throw ParseError("missing newline at end of file", n);
    }
    ProofParser parser(p, reg);
    std::size_t start = 0, lineno = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        ++lineno;
        proof.steps.push_back(parser.line(text.substr(start, end - start), lineno));
        proof.lines.push_back(lineno);
        start = end + 1;
    }
    return proof;
}

std::string serialize_step(const ProofStep& s) {
    std::string out(1, static_cast<char>(s.type));
    switch (s.type) {
        case StepType::Add:
        case StepType::Delete:
        case StepType::Loop:
            append_ints(out, s.delta);
            break;
        case StepType::Rule: {
            std::vector<Lit> v;
            for (Lit l : s.delta) v.push_back(var_of(l));
            append_ints(out, v);
            break;
        }
        case StepType::Support: {
            std::vector<Lit> v{s.atom};
            for (Lit l : s.delta) v.push_back(var_of(l));
            append_ints(out, v);
            break;
        }
        case StepType::Extend:
            append_ints(out, {s.atom});
            append_ints(out, s.delta);
            break;
        case StepType::Unfounded:
            append_ints(out, {static_cast<Lit>(s.delta.size())});
            append_ints(out, s.delta);
            append_ints(out, s.extra);
            break;
        case StepType::Body:
            append_ints(out, {s.atom});
            append_ints(out, s.extra);
            break;
    }
    return out + " 0\n";
}

std::string serialize_proof(const Proof& proof) {
    std::string out;
    for (const auto& s : proof.steps) out += serialize_step(s);
    return out;
}

void ProofWriter::write(const ProofStep& s) {
    if (out_) {
        *out_ << serialize_step(s);
        out_->flush();
    }
    proof_.steps.push_back(s);
    proof_.lines.push_back(0);
}

}  // namespace aspdrupe
