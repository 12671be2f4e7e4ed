#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdtq {

// Malformed CSV/JSON input. `line` is 1-based; `column` is 1-based when known
// and 0 otherwise. For JSON the line is 0 and column holds the byte offset.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Input that is syntactically fine but breaks a domain invariant.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rendering budget too small for the requested output.
class sizing_error : public std::invalid_argument {
 public:
  sizing_error(const std::string& what, std::size_t minimum)
      : std::invalid_argument(what), minimum_(minimum) {}
  std::size_t minimum() const { return minimum_; }

 private:
  std::size_t minimum_;
};

}  // namespace mdtq
