#pragma once

#include <string>
#include <vector>

namespace pjlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the ten acceptance criteria (threshold reproduction, closed-form
// vs numeric blowup times, simulation bounds, identity/inequality
// suites, special-function checks, determinism). Simulation artifacts
// are written under work_dir. Every tolerance is pinned here.
std::vector<CriterionResult> run_acceptance(const std::string& work_dir);

// Prints one pass/fail line per criterion; returns the failure count.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace pjlab
