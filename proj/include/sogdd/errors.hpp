#pragma once

#include <stdexcept>
#include <string>

namespace sogdd {

/// Invalid argument or configuration value.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed file contents (bad header, unsupported encoding).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure or truncated payload.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An optional collaborator (e.g. an image codec) was not supplied.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Homogeneous projection with w' == 0.
class ProjectionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical self-check did not hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sogdd
