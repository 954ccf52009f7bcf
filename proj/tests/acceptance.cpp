// One line per acceptance criterion; exit status is nonzero if any criterion fails.

#include "nilmap/suites.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
    int failed = 0, index = 0;
    for (const auto& suite : nilmap::suites::all()) {
        const auto r = suite.run(seed);
        ++index;
        std::string limit = r.time_limit ? " (limit " + std::to_string(static_cast<int>(*r.time_limit)) + " s)" : "";
        std::printf("[%s] criterion %d %s: %zu instances, %zu failures, %.2f s%s\n", r.passed() ? "PASS" : "FAIL", index,
                    r.name.c_str(), r.instances, r.failures, r.seconds, limit.c_str());
        if (!r.passed()) {
            ++failed;
            if (!r.first_failure.empty()) std::printf("    first failure: %s\n", r.first_failure.c_str());
        }
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
