#pragma once

// Randomized cross-module property suites, shared by the `verify` subcommand and the acceptance
// tests. Each suite is deterministic in its seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nilmap::suites {

struct SuiteResult {
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double seconds = 0;
    std::optional<double> time_limit;  // seconds
    std::string first_failure;         // serialized instance and reason

    bool passed() const { return failures == 0 && instances > 0 && (!time_limit || seconds < *time_limit); }
};

struct Suite {
    std::string name;
    std::function<SuiteResult(std::uint64_t seed)> run;
};

SuiteResult nilpotency_oracle(std::uint64_t seed);       // 500 random + 200 family members, < 60 s
SuiteResult z_free_equations(std::uint64_t seed);        // 100 maps, sigma_1..3 against the hand-coded forms
SuiteResult coefficient_comparison(std::uint64_t seed);  // 100 pairs with u_x + v_y = 0
SuiteResult dependence_certificates(std::uint64_t seed); // 100 form A conjugates
SuiteResult canonical_round_trip(std::uint64_t seed);    // 100 (params, T0) draws
SuiteResult form_b_system(std::uint64_t seed);           // 200 form B instances, n in {4, 5}
SuiteResult keller_equivalence(std::uint64_t seed);      // 200 reduced 4D instances
SuiteResult four_dim_transform(std::uint64_t seed);      // 100 draws with h4 = lambda h3
SuiteResult tameness(std::uint64_t seed);                // 50 maps, n in {3, 4, 5}, < 120 s
SuiteResult conjugation_invariance(std::uint64_t seed);  // 100 (H, T) draws

const std::vector<Suite>& all();

}  // namespace nilmap::suites
