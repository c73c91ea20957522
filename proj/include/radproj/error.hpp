#pragma once

#include <stdexcept>
#include <string>

namespace radproj {

/// Base class for all errors raised by the library. The CLI maps each
/// subclass onto a process exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Precondition violated by the caller (bad argument, wrong point kind, ...).
class UsageError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Work would exceed the configured memory budget.
class ResourceError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Internal consistency check failed (e.g. two visible points share an angle).
class IntegrityError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Exact integer arithmetic overflowed.
class ArithmeticError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

} // namespace radproj
