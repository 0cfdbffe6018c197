#pragma once

#include <stdexcept>
#include <string>

namespace qvf {

// Invalid input or precondition violation: maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  InputError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Numerical failure (singular crossing, escape, step underflow, non-convergence):
// maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
  NumericalError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

}  // namespace qvf
