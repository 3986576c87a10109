#pragma once

#include <stdexcept>
#include <string>

namespace arithstat {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but not supported for this function kind
/// (for example a subset scan over the unbounded von Mangoldt alphabet).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A standardization was asked to divide by a zero spread.
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (b-files, CSV caches).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace arithstat
