#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace mg::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

/// Runs criteria 1..10 (or the selected subset), printing one line per
/// criterion as it finishes.
std::vector<CriterionResult> run(std::ostream& out, const std::set<int>& only = {});

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace mg::acceptance
