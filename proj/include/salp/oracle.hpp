#pragma once

// Exhaustive makespan minimizer for tiny instances.

#include "salp/problem.hpp"

#include <cstdint>

namespace salp {

inline constexpr std::uint64_t kDefaultOracleLimit = 10'000'000;

struct OracleResult {
    Assignment optimal_assignment;
    double optimal_makespan = 0.0;
    std::uint64_t assignments_searched = 0;
};

/// Enumerates all m^n assignments with a mixed-radix counter (task 1 varies
/// fastest). Ties go to the lexicographically smallest assignment.
/// Throws SearchSpaceTooLarge when m^n > limit.
OracleResult brute_force_optimal(const ProblemInstance& inst, std::uint64_t limit = kDefaultOracleLimit);

} // namespace salp
