#pragma once

#include <stdexcept>
#include <string>

namespace uqd {

/// Invalid configuration: bad parameters, dimension mismatches, violated task constraints.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was called in a way its contract forbids (empty input, wrong variant...).
class UsageError : public std::logic_error {
public:
    explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

} // namespace uqd
