#pragma once

#include <stdexcept>
#include <string>

namespace gctop {

// Error hierarchy. The CLI maps each family to a fixed exit code:
// usage-type errors -> 2, ResourceError -> 3, IntegrityError -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph data (bad involution, disconnected input, schema problems).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A configurable size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed (e.g. modular ranks disagree).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace gctop
