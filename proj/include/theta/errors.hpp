#pragma once

#include <stdexcept>
#include <string>

namespace theta {

/// Input/document syntax problem (edge list, marked-tree text, JSON shape).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what, int line = -1)
      : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what
                                     : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// An exact search was asked to run beyond its configured size budget.
/// The search refuses rather than guess: no partial or approximate answers.
class BudgetError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A certificate or witness failed re-verification.
class CertificateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace theta
