#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed edge-list input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Out-of-range vertex, fault set outside V, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

// Labels handed to a decoder come from different scheme instances or are truncated.
class LabelError : public Error {
 public:
  using Error::Error;
};

}  // namespace ftl
