#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocon/simulation.hpp"

namespace geocon::verify {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
    Json counterexample;  // null unless the property failed
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long samples = 0;
    bool pass = false;
    std::vector<PropertyResult> properties;

    Json to_json() const;
};

// Suites: approx-square, approx-circle, approx-cube, overlap-bounds,
// psl-exhaustive, end-to-end. samples <= 0 picks each suite's default.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed, long samples);

// Scenario builders shared with the acceptance tests.

// 9M+3+extra processes pairwise farther than the fault diameter.
Scenario spread_basic_scenario(int m, std::uint64_t seed, Policy policy, InputPattern pattern);

// Decoy construction: 3M+1 decoy leaders each ringed by three spread
// processes, so the greedy leader set collapses to 3M+1 while 9M+3
// pairwise-spread processes keep the precondition satisfied. M placements
// then cover M leaders, leaving exactly 2M+1 correct ones.
Scenario decoy_basic_scenario(int m, std::uint64_t seed, Policy policy, InputPattern pattern);

// Clustered instance whose greedy square cover has at least (3 n(F)+1) M
// areas; cluster spacing keeps the per-area leader faults within the
// collapsed evaluator's reach.
Scenario clustered_generic_scenario(Alignment alignment, int m, std::uint64_t seed, Policy policy,
                                    InputPattern pattern);

// Points whose coverage number is `k` (1..3), for refusal checks.
Scenario low_coverage_scenario(int k, std::uint64_t seed);

}  // namespace geocon::verify
