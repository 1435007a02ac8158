#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace salp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime or I/O failure
inline constexpr int kExitUsage = 2;    // usage or validation error

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies one `dotted.key=value` override. The value is parsed as JSON when
/// it parses, otherwise taken as a string. Numeric path segments index arrays.
void apply_override(nlohmann::json& doc, const std::string& assignment);

} // namespace salp::cli
