#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dowker {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (bad index, duplicate label...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid input data, e.g. an empty toplex.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Text-format parse failure. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Simplex enumeration would exceed the configured cap.
class SizeCapError : public Error {
 public:
  SizeCapError(std::size_t cap)
      : Error("simplex count exceeds cap of " + std::to_string(cap)), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace dowker
