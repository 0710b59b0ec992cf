#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed (singular system, non-convergence, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user configuration (CLI flags, sweep descriptions).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A valid request that the selected back-end does not support.
class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace subdiff
