#ifndef SQRTWELL_VERIFY_HPP
#define SQRTWELL_VERIFY_HPP

#include <string>
#include <vector>

// Acceptance suite: every reproduction target of the library as one
// pass/fail criterion. Shared by the CLI `verify` command and the test
// harness.

namespace sqrtwell::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunOptions {
    std::vector<int> only; // empty: run all criteria
    double tol_scale = 1.0; // multiplies numeric tolerances (fault injection hook)
};

std::vector<CriterionResult> run(const RunOptions& opt = {});

} // namespace sqrtwell::verify

#endif
