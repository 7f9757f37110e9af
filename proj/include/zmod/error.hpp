#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zmod {

// Rejected input: malformed files, invalid graphs, inconsistent partitions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed line in a text file. line() is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace zmod
