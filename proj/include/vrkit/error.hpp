#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vrkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown generator, invalid generator index or mismatched alphabets.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// Malformed text or JSON input. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Exponent arithmetic left the range of a machine integer.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (dimension mismatch, bad tree, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A hard size cap (closure, ball, enumeration) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace vrkit
