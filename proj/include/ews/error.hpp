#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ews {

enum class ErrorCode {
  InvalidInput,
  ColumnSumViolation,
  RankingViolation,
  QuasiConcavityViolation,
  InfeasibleEws,
  DegenerateRatio,
  AsymptoteError,
  SingularSystem,
  ExpansionMismatch,
  SignContractViolation,
  ReciprocityViolation,
  IncidenceViolation,
  BoundaryAmbiguity,
  UnmappedRegion,
  NoEquilibrium,
  OracleMismatch,
  IdentityFailure,
};

std::string_view to_string(ErrorCode code);

/// Errors that signal an internal inconsistency (a bug) rather than bad input.
bool is_internal(ErrorCode code);

class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kAbsFloor = 1e-12;

/// |a - b| <= max(rel * max(|a|, |b|), abs_floor)
inline bool approx_equal(double a, double b, double rel, double abs_floor = kAbsFloor) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= std::max(rel * scale, abs_floor);
}

inline double relative_difference(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), kAbsFloor});
  return std::fabs(a - b) / scale;
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace ews
