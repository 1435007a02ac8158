#pragma once

#include <stdexcept>
#include <string>

namespace salp {

/// Argument or data that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad or missing optimizer / experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the brute-force oracle when m^n exceeds the enumeration limit.
class SearchSpaceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace salp
