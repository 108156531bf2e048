#pragma once

#include <stdexcept>
#include <string>

namespace gcdh {

// A mathematical precondition failed: valuation of zero, point at identity,
// hypothesis of a theorem not satisfied, and so on.
class MathError : public std::domain_error {
public:
    explicit MathError(const std::string& what) : std::domain_error(what) {}
};

// Malformed or incomplete input (configs, CLI tokens, parse failures).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gcdh
