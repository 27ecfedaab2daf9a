#pragma once
#include <stdexcept>
#include <string>

namespace qscatter {

/// Raised when requested physics cannot be realized (infeasible source
/// target, non-diffusive medium, undefined correlation, ...).
class PhysicsError : public std::runtime_error {
public:
  explicit PhysicsError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Raised on malformed configuration input (unknown keys, bad sweep axes).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace qscatter
