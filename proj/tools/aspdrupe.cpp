// Command-line front end: solve, check, oracle, normalize, fuzz.
//
// Exit status: 0 on success, 1 on a rejected proof, an unknown solver
// verdict or fuzz discrepancies, 2 on I/O, parse or unsupported-input problems.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "aspdrupe/aspdrupe.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int report_error(const char* what) {
    std::cerr << "error: " << what << ": " << aspd_last_error() << "\n";
    return kExitInput;
}

struct Program {
    aspd_program* p = nullptr;
    ~Program() { aspd_program_free(p); }
};

// Takes ownership of a library string.
std::string take(char* s) {
    std::string out = s ? s : "";
    aspd_string_free(s);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ASP solver with ASP-DRUPE inconsistency proofs, proof checker and brute-force oracle"};
    app.require_subcommand(1);

    std::string prog_path, proof_path, proof_log, heuristic = "lowest-true";
    bool restarts = false, preloaded = false, strict_delete = false;
    std::uint64_t seed = 0, max_conflicts = 0;
    double max_seconds = 0;
    std::size_t max_models = 0, count = 100, atoms = 5, rules = 10;

    auto* solve = app.add_subcommand("solve", "Solve a program; write an inconsistency proof");
    solve->add_option("program", prog_path, "LP-lite program")->required();
    solve->add_option("--proof-log", proof_log, "Proof output file");
    solve->add_option("--heuristic", heuristic, "Decision heuristic")
        ->check(CLI::IsMember({"lowest-true", "lowest-false", "random"}));
    solve->add_flag("--restarts", restarts, "Luby restarts with nogood deletion");
    solve->add_option("--seed", seed, "Seed for the random heuristic");
    solve->add_option("--max-conflicts", max_conflicts, "Conflict limit (0: none)");
    solve->add_option("--max-seconds", max_seconds, "Time limit in seconds (0: none)")->check(CLI::NonNegativeNumber);

    auto* check = app.add_subcommand("check", "Check an ASP-DRUPE proof");
    check->add_option("program", prog_path, "LP-lite program")->required();
    check->add_option("proof", proof_path, "Proof file")->required();
    check->add_flag("--preloaded-completion", preloaded, "Start from the whole completion");
    check->add_flag("--strict-delete", strict_delete, "Deleting an absent nogood is an error");

    auto* oracle = app.add_subcommand("oracle", "Print all answer sets by brute force");
    oracle->add_option("program", prog_path, "LP-lite program")->required();
    oracle->add_option("--max-models", max_models, "Stop after N answer sets (0: all)");

    auto* normalize = app.add_subcommand("normalize", "Print the short-body normal form");
    normalize->add_option("program", prog_path, "LP-lite program")->required();

    auto* fuzz = app.add_subcommand("fuzz", "Differential test of solver, checker and oracle");
    fuzz->add_option("--count", count, "Number of programs")->check(CLI::PositiveNumber);
    fuzz->add_option("--atoms", atoms, "Atoms per program")->check(CLI::Range(1, 20));
    fuzz->add_option("--rules", rules, "Maximum rules per program");
    fuzz->add_option("--seed", seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    if (fuzz->parsed()) {
        aspd_fuzz_summary sum{};
        char* details = nullptr;
        if (aspd_fuzz(count, atoms, rules, seed, &sum, &details) != ASPD_OK) return report_error("fuzz");
        std::string d = take(details);
        std::cout << d << "programs " << sum.programs << ", consistent " << sum.consistent << ", inconsistent "
                  << sum.inconsistent << ", discrepancies " << sum.discrepancies << "\n";
        return sum.discrepancies ? kExitFail : kExitOk;
    }

    Program prog;
    if (aspd_program_from_file(prog_path.c_str(), &prog.p) != ASPD_OK) return report_error(prog_path.c_str());

    if (solve->parsed()) {
        static const std::map<std::string, aspd_heuristic> heuristics{
            {"lowest-true", ASPD_HEUR_LOWEST_TRUE}, {"lowest-false", ASPD_HEUR_LOWEST_FALSE}, {"random", ASPD_HEUR_RANDOM}};
        aspd_solve_options o;
        aspd_solve_options_init(&o);
        o.heuristic = heuristics.at(heuristic);
        o.restarts = restarts;
        o.seed = seed;
        o.max_conflicts = max_conflicts;
        o.max_seconds = max_seconds;
        o.proof_path = proof_log.empty() ? nullptr : proof_log.c_str();
        aspd_verdict v;
        char* as = nullptr;
        if (aspd_solve(prog.p, &o, &v, &as) != ASPD_OK) return report_error("solve");
        std::string answer = take(as);
        switch (v) {
            case ASPD_CONSISTENT:
                std::cout << "CONSISTENT\n" << answer << "\n";
                return kExitOk;
            case ASPD_INCONSISTENT:
                std::cout << "INCONSISTENT\n";
                return kExitOk;
            default:
                std::cout << "UNKNOWN\n";
                return kExitFail;
        }
    }

    if (check->parsed()) {
        aspd_check_options o;
        aspd_check_options_init(&o);
        o.preloaded_completion = preloaded;
        o.strict_delete = strict_delete;
        aspd_check_report rep;
        if (aspd_check_file(prog.p, proof_path.c_str(), &o, &rep) != ASPD_OK) return report_error(proof_path.c_str());
        switch (rep.outcome) {
            case ASPD_CHECK_SUCCESS:
                std::cout << "Success\n";
                return kExitOk;
            case ASPD_CHECK_ERROR:
                std::cout << "Error\n";
                if (rep.step) std::cerr << "step " << rep.step << " (line " << rep.line << "): " << rep.reason << "\n";
                else std::cerr << rep.reason << "\n";
                return kExitFail;
            default:
                std::cerr << "parse error: " << rep.reason << "\n";
                return kExitInput;
        }
    }

    if (oracle->parsed()) {
        std::size_t n = 0;
        char* out = nullptr;
        if (aspd_oracle_answer_sets(prog.p, max_models, &n, &out) != ASPD_OK) return report_error("oracle");
        std::cout << take(out);
        return kExitOk;
    }

    char* out = nullptr;
    if (aspd_program_normalize(prog.p, &out) != ASPD_OK) return report_error("normalize");
    std::cout << take(out);
    return kExitOk;
}
