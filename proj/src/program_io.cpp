#include "aspdrupe/program_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace aspdrupe {

namespace {

enum class Tok { Ident, Number, If, Bar, Comma, Semi, LBrace, RBrace, Leq, Eq, Tilde, Dot, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t col;
};

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            out.push_back({Tok::Number, std::string(line.substr(i, j - i)), col});
            i = j;
        } else if (line.substr(i, 2) == ":-") {
            out.push_back({Tok::If, ":-", col});
            i += 2;
        } else if (line.substr(i, 2) == "<=") {
            out.push_back({Tok::Leq, "<=", col});
            i += 2;
        } else {
            Tok k;
            switch (c) {
                case '|': k = Tok::Bar; break;
                case ',': k = Tok::Comma; break;
                case ';': k = Tok::Semi; break;
                case '{': k = Tok::LBrace; break;
                case '}': k = Tok::RBrace; break;
                case '=': k = Tok::Eq; break;
                case '~': k = Tok::Tilde; break;
                case '.': k = Tok::Dot; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
            }
            out.push_back({k, std::string(1, c), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", line.size() + 1});
    return out;
}

// Rule with atom names; generated heads are resolved after the whole text is read.
struct PendingRule {
    Rule rule;
    bool constraint = false;
};

class LineParser {
public:
    LineParser(Program& p, std::vector<Token> toks, std::size_t lineno)
        : p_(p), toks_(std::move(toks)), line_(lineno) {}

    PendingRule parse() {
        PendingRule pr;
        if (at(Tok::If)) {
            next();
            pr.constraint = true;
            pr.rule.kind = RuleKind::Disjunctive;
            parse_body(pr.rule);
        } else if (at(Tok::LBrace)) {
            next();
            pr.rule.kind = RuleKind::Choice;
            pr.rule.head.push_back(atom_ref());
            while (at(Tok::Semi)) {
                next();
                push_unique(pr.rule.head, atom_ref());
            }
            expect(Tok::RBrace, "'}'");
            if (at(Tok::If)) {
                next();
                parse_body(pr.rule);
            }
        } else {
            pr.rule.kind = RuleKind::Disjunctive;
            pr.rule.head.push_back(atom_ref());
            while (at(Tok::Bar)) {
                next();
                push_unique(pr.rule.head, atom_ref());
            }
            if (at(Tok::If)) {
                next();
                if (at(Tok::Number)) {
                    if (pr.rule.head.size() != 1) fail("weight rule must have a single head atom");
                    parse_weight(pr.rule);
                } else {
                    parse_body(pr.rule);
                }
            }
        }
        expect(Tok::Dot, "'.'");
        if (!at(Tok::End)) fail("unexpected text after '.' (one rule per line)");
        return pr;
    }

private:
    bool at(Tok k) const { return toks_[pos_].kind == k; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, toks_[pos_].col); }
    void expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        next();
    }
    static void push_unique(std::vector<Var>& v, Var a) {
        if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
    }

    Var atom_ref() {
        if (!at(Tok::Ident) || toks_[pos_].text == "not") fail("expected atom name");
        return p_.atom(next().text);
    }

    Literal literal() {
        bool neg = false;
        if (at(Tok::Tilde)) {
            next();
            neg = true;
        } else if (at(Tok::Ident) && toks_[pos_].text == "not") {
            next();
            neg = true;
        }
        return Literal{atom_ref(), neg};
    }

    void parse_body(Rule& r) {
        for (;;) {
            Literal l = literal();
            push_unique(l.negated ? r.neg : r.pos, l.atom);
            if (!at(Tok::Comma)) break;
            next();
        }
    }

    std::uint64_t number() {
        if (!at(Tok::Number)) fail("expected non-negative integer");
        const Token& t = next();
        try {
            return std::stoull(t.text);
        } catch (const std::exception&) {
            throw ParseError("integer out of range", line_, t.col);
        }
    }

    void parse_weight(Rule& r) {
        Var head = r.head.front();
        std::uint64_t bound = number();
        expect(Tok::Leq, "'<='");
        expect(Tok::LBrace, "'{'");
        std::vector<WeightedLiteral> lits;
        if (!at(Tok::RBrace)) {
            for (;;) {
                std::size_t col = toks_[pos_].col;
                Literal l = literal();
                expect(Tok::Eq, "'=' and a weight");
                std::uint64_t w = number();
                for (const auto& wl : lits)
                    if (wl.lit == l) throw ParseError("duplicate weight entry for the same literal", line_, col);
                lits.push_back({l, w});
                if (!at(Tok::Comma)) break;
                next();
            }
        }
        expect(Tok::RBrace, "'}'");
        r = Rule::weight(head, bound, std::move(lits));
    }

    Program& p_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

// "#atoms a b c." fixes the ids of the listed atoms, in order.
void declare_atoms(Program& p, std::string_view rest, std::size_t lineno, std::size_t offset) {
    auto toks = tokenize(rest, lineno);
    std::size_t i = 0;
    for (; toks[i].kind == Tok::Ident; ++i) p.atom(toks[i].text);
    if (toks[i].kind != Tok::Dot || toks[i + 1].kind != Tok::End)
        throw ParseError("expected atom names followed by '.'", lineno, toks[i].col + offset - 1);
}

}  // namespace

Program parse_program(std::string_view text) {
    Program p;
    std::vector<PendingRule> pending;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++lineno;
        if (auto pct = line.find('%'); pct != std::string_view::npos) line = line.substr(0, pct);
        std::size_t lead = line.find_first_not_of(" \t\r");
        if (lead != std::string_view::npos && line.substr(lead, 6) == "#atoms") {
            declare_atoms(p, line.substr(lead + 6), lineno, lead + 7);
            start = end + 1;
            continue;
        }
        auto toks = tokenize(line, lineno);
        if (toks.size() > 1) pending.push_back(LineParser(p, std::move(toks), lineno).parse());
        start = end + 1;
    }
    for (auto& pr : pending) {
        if (pr.constraint) {
            Var bot = p.fresh_atom("__bot");
            pr.rule.head = {bot};
            pr.rule.neg.push_back(bot);
        }
        p.add_rule(std::move(pr.rule));
    }
    return p;
}

Program load_program(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

std::string emit_dictionary(const Program& p) {
    std::string out;
    for (Var a = 1; static_cast<std::size_t>(a) <= p.num_atoms(); ++a) out += std::to_string(a) + " " + p.name(a) + "\n";
    return out;
}

std::string print_rule(const Program& p, const Rule& r) {
    std::string s;
    auto lit = [&](Var a, bool neg) { return (neg ? "not " : "") + p.name(a); };
    if (r.kind == RuleKind::Choice) {
        s += "{ ";
        for (std::size_t i = 0; i < r.head.size(); ++i) s += (i ? "; " : "") + p.name(r.head[i]);
        s += " }";
    } else {
        for (std::size_t i = 0; i < r.head.size(); ++i) s += (i ? " | " : "") + p.name(r.head[i]);
    }
    if (r.kind == RuleKind::Weight) {
        s += " :- " + std::to_string(r.bound) + " <= {";
        for (std::size_t i = 0; i < r.weights.size(); ++i) {
            const auto& wl = r.weights[i];
            s += (i ? ", " : " ") + lit(wl.lit.atom, wl.lit.negated) + "=" + std::to_string(wl.weight);
        }
        s += r.weights.empty() ? "}" : " }";
    } else if (!r.pos.empty() || !r.neg.empty()) {
        s += " :- ";
        bool first = true;
        for (Var a : r.pos) {
            s += (first ? "" : ", ") + lit(a, false);
            first = false;
        }
        for (Var a : r.neg) {
            s += (first ? "" : ", ") + lit(a, true);
            first = false;
        }
    }
    return s + ".";
}

std::string print_program(const Program& p) {
    std::string out;
    if (p.num_atoms() > 0) {
        out += "#atoms";
        for (Var a = 1; static_cast<std::size_t>(a) <= p.num_atoms(); ++a) out += " " + p.name(a);
        out += ".\n";
    }
    for (const Rule& r : p.rules()) out += print_rule(p, r) + "\n";
    return out;
}

}  // namespace aspdrupe
