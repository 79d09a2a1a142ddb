#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace icrack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition or invariant on user-supplied data was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A principal-value integral was requested too close to a crack tip.
class TipProximityError : public Error {
public:
  using Error::Error;
};

/// A potential was requested too close to the contour for the quadrature to be trusted.
class NearBoundaryError : public Error {
public:
  using Error::Error;
};

/// The collocation system could not be solved to the requested tolerance.
class SolverError : public Error {
public:
  SolverError(const std::string& what, std::vector<std::string> tags)
      : Error(what), tags_(std::move(tags)) {}

  const std::vector<std::string>& row_tags() const noexcept { return tags_; }

private:
  std::vector<std::string> tags_;
};

/// A run configuration could not be parsed or failed validation.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace icrack
