#pragma once

#include "salp/optimizer.hpp"

#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace salp {

inline constexpr std::array<std::string_view, 5> kAlgorithmIds{"mssa", "ssa", "ga", "pso", "acor"};

bool is_known_algorithm(std::string_view id) noexcept;

/// "mssa|ssa|ga|pso|acor"
std::string algorithm_choices();

/// Throws ConfigError listing the valid ids for an unknown one.
std::unique_ptr<Algorithm> make_algorithm(std::string_view id);

/// nPop = 40, MaxIt = 500 and the default per-algorithm parameter values.
OptimizerConfig default_config(std::string_view id);

} // namespace salp
