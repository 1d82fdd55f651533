#pragma once

#include <stdexcept>
#include <string>

namespace kdvlab {

/// Base of every error raised by the library. `kind()` is the stable,
/// machine-readable tag written into CLI error reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A caller broke an operation's precondition (mismatched truncation,
/// inverse derivative of a field with a mean, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// Invalid parameters or configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// A computation could not produce a meaningful number (degenerate fits,
/// overflow, non-finite values).
class NumericError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

[[noreturn]] void throw_precondition(const std::string& what);

}  // namespace kdvlab
