#pragma once

#include <stdexcept>
#include <string>

namespace liebc {

enum class ErrorCode {
  division_by_zero,
  parse,
  unknown_model,
  roots_outside_field,
  non_subalgebra,
  degenerate_parameter,
  integrability,
  mismatched_n,
  bidegree_mismatch,
  singular_metric,
  positivity_loss,
  invalid_argument,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::parse: return "parse";
    case ErrorCode::unknown_model: return "unknown-model";
    case ErrorCode::roots_outside_field: return "roots-outside-coefficient-field";
    case ErrorCode::non_subalgebra: return "non-subalgebra";
    case ErrorCode::degenerate_parameter: return "degenerate-parameter";
    case ErrorCode::integrability: return "integrability-failure";
    case ErrorCode::mismatched_n: return "mismatched-n";
    case ErrorCode::bidegree_mismatch: return "bidegree-mismatch";
    case ErrorCode::singular_metric: return "singular-metric";
    case ErrorCode::positivity_loss: return "positivity-loss";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace liebc
