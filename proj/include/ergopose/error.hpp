#pragma once

#include <stdexcept>
#include <string>

namespace ergopose {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is out of its domain (non-positive stature, dt <= 0,
/// degenerate joint limits, dimension mismatch, ...).
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// A state value violates its invariant, e.g. a non-positive capacity.
class InvalidState : public Error {
public:
  using Error::Error;
};

/// Malformed or incomplete configuration input.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// The problem has no feasible solution.
class NoSolution : public Error {
public:
  using Error::Error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidParameter(message);
}
}  // namespace detail

}  // namespace ergopose
