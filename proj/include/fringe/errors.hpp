#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fringe {

/// One violated invariant, with a stable machine-readable code.
struct Issue {
  std::string code;
  std::string message;
};

/// Bad input: configuration, geometry, parameter ranges. Maps to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  ValidationError(std::string code, const std::string& message);

  const std::vector<Issue>& issues() const noexcept { return issues_; }
  const std::string& code() const noexcept { return issues_.front().code; }

 private:
  std::vector<Issue> issues_;
};

/// Numerical failure during integration or evaluation. Maps to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace fringe
