// One line per acceptance criterion; exit status 1 when any criterion fails.
#include "quasiq/suite.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    bool all = true;
    for (int id = 1; id <= qq::kCriteria; ++id) {
        qq::CriterionResult r = qq::run_criterion(id, seed);
        all &= r.pass;
        std::printf("criterion %d %s  %s: %s (%.2fs)\n", id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str(), r.seconds);
        for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
