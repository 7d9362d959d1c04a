#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oreforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or input document. `position()` is a byte offset
/// into the text that was being parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero, zero to a negative power, and similar.
class MathError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iteration bound or term-count limit was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold exactly did not.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace oreforge
