#pragma once

#include <string>
#include <vector>

namespace proofforge {

// verify@k success rate over a set of tasks. Each task contributes one
// boolean: whether any of its (at most k) runs succeeded.
struct success_rate {
    int successes = 0;
    int tasks = 0;

    [[nodiscard]] double fraction() const;

    // Percent string matching how rates are conventionally reported:
    // an integer when the percentage is exact at zero decimals, one
    // decimal when exact there, otherwise the integer part (floor).
    // 19/22 -> "86%", 7/8 -> "87.5%", 4/13 -> "30%".
    [[nodiscard]] std::string formatted() const;
};

// Throws usage_error on an empty task list.
[[nodiscard]] success_rate verify_at_k(const std::vector<bool>& task_outcomes);

} // namespace proofforge
