#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gp {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configurable size/work cap was exceeded. `cap()` names the responsible cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string cap, const std::string& what)
      : Error(what + " [cap: " + cap + "]"), cap_(std::move(cap)) {}

  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

// The requested evaluation point lies outside every zero-free region we can vouch for.
class OutsideRegion : public Error {
 public:
  using Error::Error;
};

// An identity that must hold by construction did not. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace gp
