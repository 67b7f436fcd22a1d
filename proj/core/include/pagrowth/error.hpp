#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pagrowth {

// Bad or unreadable input data (malformed lines, missing files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input line; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid user-supplied configuration (simulation, fit options, schedules).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pagrowth
