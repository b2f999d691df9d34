#pragma once

#include <stdexcept>
#include <string>

namespace helmholtz {

/// Argument outside the mathematical domain of a function (negative radius,
/// pole of cot, radius beyond the antipodal point of a sphere, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A named hypothesis of a comparison theorem or experiment did not hold.
/// The hypothesis name is stable and is what callers (and the CLI) report.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string hypothesis, const std::string& detail)
      : std::invalid_argument("precondition '" + hypothesis + "' failed: " + detail),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// ODE step-size collapse, quadrature non-convergence, or a root bracket
/// that should exist but does not.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data handed to a fit or report is unusable (non-positive bound, too few samples).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace helmholtz
