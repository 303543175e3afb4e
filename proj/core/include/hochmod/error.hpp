#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hochmod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location)
      : Error(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Raised when a computation would exceed the configured cochain entry cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t required, std::size_t cap)
      : Error(what + " (requires " + std::to_string(required) + " entries, cap " +
              std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}
  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

/// A mathematical identity that must hold on valid input failed.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same map disagreed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hochmod
