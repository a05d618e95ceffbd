#include "proofforge/metrics.hpp"

#include "proofforge/errors.hpp"

#include <sstream>

namespace proofforge {

double success_rate::fraction() const {
    return tasks == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(tasks);
}

std::string success_rate::formatted() const {
    long long s = successes;
    long long t = tasks;
    std::ostringstream out;
    if (t > 0 && (100 * s) % t == 0) {
        out << (100 * s) / t << "%";
    } else if (t > 0 && (1000 * s) % t == 0) {
        long long tenths = (1000 * s) / t;
        out << tenths / 10 << "." << tenths % 10 << "%";
    } else {
        out << (100 * s) / t << "%"; // floor
    }
    return out.str();
}

success_rate verify_at_k(const std::vector<bool>& task_outcomes) {
    if (task_outcomes.empty()) {
        throw usage_error("verify@k: success rate is undefined over zero tasks");
    }
    success_rate rate;
    rate.tasks = static_cast<int>(task_outcomes.size());
    for (bool solved : task_outcomes) {
        if (solved) ++rate.successes;
    }
    return rate;
}

} // namespace proofforge
