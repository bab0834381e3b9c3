// Runs the acceptance criteria at their stated tolerances; one line per
// criterion. An optional argument selects a single criterion.
#include <cstdlib>
#include <iostream>

#include "recolor/verify.hpp"

int main(int argc, char** argv) {
    recolor::SuiteOptions options;
    std::vector<recolor::CriterionResult> results;
    if (argc > 1)
        results.push_back(recolor::run_criterion(std::atoi(argv[1]), options));
    else
        results = recolor::run_acceptance(options);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << recolor::format_result(r) << std::endl;
        failed += !r.pass;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
