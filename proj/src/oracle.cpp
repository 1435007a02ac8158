#include "salp/oracle.hpp"

#include "salp/errors.hpp"

#include <algorithm>
#include <string>

namespace salp {

OracleResult brute_force_optimal(const ProblemInstance& inst, std::uint64_t limit) {
    const std::size_t n = inst.task_count();
    const std::size_t m = inst.vm_count();

    auto too_large = [&] {
        return SearchSpaceTooLarge("search space " + std::to_string(m) + "^" + std::to_string(n) +
                                   " exceeds limit " + std::to_string(limit));
    };
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (space > limit / m) throw too_large();
        space *= m;
    }

    const auto& sizes = inst.task_sizes();
    const auto& speeds = inst.vm_speeds();
    const int top = static_cast<int>(m);

    Assignment current(n, 1);
    std::vector<double> done(m);
    OracleResult best;
    bool first = true;
    for (std::uint64_t count = 0; count < space; ++count) {
        std::fill(done.begin(), done.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(current[i] - 1);
            done[j] += sizes[i] / speeds[j];
        }
        const double ms = *std::max_element(done.begin(), done.end());
        if (first || ms < best.optimal_makespan ||
            (ms == best.optimal_makespan && current < best.optimal_assignment)) {
            best.optimal_makespan = ms;
            best.optimal_assignment = current;
            first = false;
        }
        ++best.assignments_searched;

        for (std::size_t i = 0; i < n; ++i) {
            if (current[i] < top) {
                ++current[i];
                break;
            }
            current[i] = 1;
        }
    }
    return best;
}

} // namespace salp
