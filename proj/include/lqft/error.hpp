#pragma once

#include <stdexcept>
#include <string>

namespace lqft {

// Errors are typed so callers can tell "outside the validated domain" apart
// from a legitimate zero. No function in this library returns NaN on purpose.

struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

struct overflow_domain_error : domain_error {
  explicit overflow_domain_error(const std::string& what) : domain_error(what) {}
};

struct singular_input_error : domain_error {
  explicit singular_input_error(const std::string& what) : domain_error(what) {}
};

// A quadrature or eigensolver failed to reach its tolerance within budget.
struct numerical_error : std::runtime_error {
  double residual{0.0};
  explicit numerical_error(const std::string& what, double res = 0.0)
      : std::runtime_error(what), residual(res) {}
};

// A precondition on the inputs (contract) was violated.
struct contract_error : std::invalid_argument {
  explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter combination the closed forms do not cover.
struct unsupported_configuration : contract_error {
  explicit unsupported_configuration(const std::string& what) : contract_error(what) {}
};

}  // namespace lqft
