#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binnms {

// Two vectors (or a vector and a dataset) disagree on dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// Malformed input data. Row and column are 1-based positions in the source
// file; zero means "not applicable".
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
      : std::runtime_error(format(what, row, column)), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row, std::size_t column) {
    if (row == 0) return what;
    std::string pos = " (row " + std::to_string(row);
    if (column != 0) pos += ", column " + std::to_string(column);
    return what + pos + ")";
  }

  std::size_t row_;
  std::size_t column_;
};

// Invalid user configuration (bad flag values, unreadable config file).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace binnms
