// Seeded random normal programs and the solver/checker/oracle differential loop.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aspdrupe/core.hpp"

namespace aspdrupe {

struct FuzzConfig {
    std::size_t atoms = 5;
    std::size_t max_rules = 10;
    std::size_t max_body = 3;
    double negation_prob = 0.5;
    double constraint_prob = 0.1;
};

// Atoms are named p1..pK and all declared, whether or not a rule uses them.
Program random_program(const FuzzConfig& cfg, std::mt19937_64& rng);

struct FuzzReport {
    std::size_t programs = 0;
    std::size_t consistent = 0;
    std::size_t inconsistent = 0;
    std::vector<std::string> discrepancies;  // one line each, with the program text
};

// For each program: solver verdict against the oracle, answer sets against
// the stability test, and proofs against the checker.
FuzzReport run_fuzz(std::size_t count, const FuzzConfig& cfg, std::uint64_t seed);

}  // namespace aspdrupe
