#include "aspdrupe/aspdrupe.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "aspdrupe/checker.hpp"
#include "aspdrupe/completion.hpp"
#include "aspdrupe/fuzz.hpp"
#include "aspdrupe/oracle.hpp"
#include "aspdrupe/program_io.hpp"
#include "aspdrupe/solver.hpp"

struct aspd_program {
    aspdrupe::Program p;
};

namespace {

thread_local std::string last_error;

aspd_status set_error(aspd_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps library exceptions to status codes.
template <class F>
aspd_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const aspdrupe::ParseError& e) {
        return set_error(ASPD_ERR_PARSE, e.what());
    } catch (const aspdrupe::UnsupportedError& e) {
        return set_error(ASPD_ERR_UNSUPPORTED, e.what());
    } catch (const aspdrupe::LimitError& e) {
        return set_error(ASPD_ERR_LIMIT, e.what());
    } catch (const aspdrupe::ContractError& e) {
        return set_error(ASPD_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(ASPD_ERR_INTERNAL, e.what());
    }
}

std::string atom_set(const aspdrupe::Program& p, const std::vector<aspdrupe::Var>& atoms) {
    std::vector<std::string> names;
    for (auto a : atoms) names.push_back(p.name(a));
    std::sort(names.begin(), names.end());
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
    return s + "}";
}

bool read_file(const char* path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

void fill_report(const aspdrupe::CheckResult& r, aspd_check_report* rep) {
    rep->outcome = r.outcome == aspdrupe::CheckResult::Outcome::Success ? ASPD_CHECK_SUCCESS
                   : r.outcome == aspdrupe::CheckResult::Outcome::Error ? ASPD_CHECK_ERROR
                                                                        : ASPD_CHECK_PARSE_FAILURE;
    rep->step = r.step;
    rep->line = r.line;
    std::snprintf(rep->reason, sizeof rep->reason, "%s", r.reason.c_str());
}

aspdrupe::CheckOptions check_options(const aspd_check_options* o) {
    aspdrupe::CheckOptions co;
    if (o) {
        co.preloaded_completion = o->preloaded_completion != 0;
        co.strict_delete = o->strict_delete != 0;
    }
    return co;
}

}  // namespace

extern "C" {

const char* aspd_last_error(void) { return last_error.c_str(); }

void aspd_string_free(char* s) { std::free(s); }

aspd_status aspd_program_from_text(const char* text, aspd_program** out) {
    if (!text || !out) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new aspd_program{aspdrupe::parse_program(text)};
        return ASPD_OK;
    });
}

aspd_status aspd_program_from_file(const char* path, aspd_program** out) {
    if (!path || !out) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    std::string text;
    if (!read_file(path, text)) return set_error(ASPD_ERR_IO, std::string("cannot read ") + path);
    return aspd_program_from_text(text.c_str(), out);
}

void aspd_program_free(aspd_program* p) { delete p; }

size_t aspd_program_num_atoms(const aspd_program* p) { return p ? p->p.num_atoms() : 0; }

aspd_status aspd_program_dictionary(const aspd_program* p, char** out) {
    if (!p || !out) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup(aspdrupe::emit_dictionary(p->p));
        return ASPD_OK;
    });
}

aspd_status aspd_program_normalize(const aspd_program* p, char** out) {
    if (!p || !out) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup(aspdrupe::print_program(aspdrupe::normalize_short_body(p->p)));
        return ASPD_OK;
    });
}

void aspd_solve_options_init(aspd_solve_options* o) {
    if (!o) return;
    *o = aspd_solve_options{};
    o->heuristic = ASPD_HEUR_LOWEST_TRUE;
}

aspd_status aspd_solve(const aspd_program* p, const aspd_solve_options* o, aspd_verdict* verdict, char** answer_set) {
    if (!p || !verdict) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    aspd_solve_options opts;
    aspd_solve_options_init(&opts);
    if (o) opts = *o;
    if (opts.max_seconds < 0) return set_error(ASPD_ERR_ARGUMENT, "max_seconds must not be negative");
    aspdrupe::SolverOptions so;
    switch (opts.heuristic) {
        case ASPD_HEUR_LOWEST_TRUE: so.heuristic = aspdrupe::Heuristic::LowestTrue; break;
        case ASPD_HEUR_LOWEST_FALSE: so.heuristic = aspdrupe::Heuristic::LowestFalse; break;
        case ASPD_HEUR_RANDOM: so.heuristic = aspdrupe::Heuristic::Random; break;
        default: return set_error(ASPD_ERR_ARGUMENT, "unknown heuristic");
    }
    so.restarts = opts.restarts != 0;
    so.seed = opts.seed;
    so.max_conflicts = opts.max_conflicts;
    so.max_seconds = opts.max_seconds;
    std::ofstream proof;
    if (opts.proof_path) {
        proof.open(opts.proof_path, std::ios::binary);
        if (!proof) return set_error(ASPD_ERR_IO, std::string("cannot write ") + opts.proof_path);
    }
    return guarded([&] {
        auto res = aspdrupe::solve(p->p, so, opts.proof_path ? &proof : nullptr);
        switch (res.verdict) {
            case aspdrupe::SolveResult::Verdict::Consistent: *verdict = ASPD_CONSISTENT; break;
            case aspdrupe::SolveResult::Verdict::Inconsistent: *verdict = ASPD_INCONSISTENT; break;
            case aspdrupe::SolveResult::Verdict::Unknown: *verdict = ASPD_UNKNOWN; break;
        }
        if (answer_set)
            *answer_set = res.verdict == aspdrupe::SolveResult::Verdict::Consistent ? dup(atom_set(p->p, res.answer_set)) : nullptr;
        if (proof.is_open() && !proof.good()) return set_error(ASPD_ERR_IO, "writing the proof failed");
        return ASPD_OK;
    });
}

void aspd_check_options_init(aspd_check_options* o) {
    if (o) *o = aspd_check_options{};
}

aspd_status aspd_check_text(const aspd_program* p, const char* proof_text, const aspd_check_options* o,
                            aspd_check_report* report) {
    if (!p || !proof_text || !report) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        fill_report(aspdrupe::check_text(p->p, proof_text, check_options(o)), report);
        return ASPD_OK;
    });
}

aspd_status aspd_check_file(const aspd_program* p, const char* proof_path, const aspd_check_options* o,
                            aspd_check_report* report) {
    if (!p || !proof_path || !report) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    std::string text;
    if (!read_file(proof_path, text)) return set_error(ASPD_ERR_IO, std::string("cannot read ") + proof_path);
    return aspd_check_text(p, text.c_str(), o, report);
}

aspd_status aspd_oracle_answer_sets(const aspd_program* p, size_t max_models, size_t* count, char** out) {
    if (!p || !count || !out) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto sets = aspdrupe::enumerate_answer_sets(p->p, max_models);
        std::vector<std::string> lines;
        for (const auto& s : sets) lines.push_back(atom_set(p->p, s));
        std::sort(lines.begin(), lines.end());
        std::string text;
        for (const auto& l : lines) text += l + "\n";
        *count = sets.size();
        *out = dup(text);
        return ASPD_OK;
    });
}

aspd_status aspd_fuzz(size_t count, size_t atoms, size_t max_rules, uint64_t seed, aspd_fuzz_summary* summary,
                      char** details) {
    if (!summary) return set_error(ASPD_ERR_ARGUMENT, "null argument");
    if (atoms > aspdrupe::kOracleMaxAtoms) return set_error(ASPD_ERR_ARGUMENT, "too many atoms for the oracle");
    return guarded([&] {
        aspdrupe::FuzzConfig cfg;
        cfg.atoms = atoms;
        cfg.max_rules = max_rules;
        auto rep = aspdrupe::run_fuzz(count, cfg, seed);
        *summary = {rep.programs, rep.consistent, rep.inconsistent, rep.discrepancies.size()};
        if (details) {
            std::string text;
            for (const auto& d : rep.discrepancies) text += d + "\n";
            *details = dup(text);
        }
        return ASPD_OK;
    });
}

}  // extern "C"
