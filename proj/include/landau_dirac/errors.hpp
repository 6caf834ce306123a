#pragma once

#include <stdexcept>
#include <string>

namespace landau_dirac {

enum class error_kind {
  invalid_config,
  domain,
  unsupported_basis,
  degenerate_coefficients,
  outside_positive_branch,
  precondition,
  envelope_violation,
  oracle_failure,
  quadrature_failure,
  parse,
  io,
};

inline const char* to_string(error_kind k) {
  switch (k) {
    case error_kind::invalid_config: return "invalid-config";
    case error_kind::domain: return "domain";
    case error_kind::unsupported_basis: return "unsupported-basis";
    case error_kind::degenerate_coefficients: return "degenerate-coefficients";
    case error_kind::outside_positive_branch: return "outside-positive-branch";
    case error_kind::precondition: return "precondition";
    case error_kind::envelope_violation: return "envelope-violation";
    case error_kind::oracle_failure: return "oracle-failure";
    case error_kind::quadrature_failure: return "quadrature-failure";
    case error_kind::parse: return "parse";
    case error_kind::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

}  // namespace landau_dirac
