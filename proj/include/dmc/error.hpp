#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad facet lists, invalid ids, violated preconditions.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line number of the offending input line, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An exhaustive computation would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial_count)
      : Error(what), partial_count_(partial_count) {}

  // Number of items produced before the budget was hit.
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace dmc
