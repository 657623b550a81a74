#include "ews/error.hpp"

namespace ews {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ColumnSumViolation: return "ColumnSumViolation";
    case ErrorCode::RankingViolation: return "RankingViolation";
    case ErrorCode::QuasiConcavityViolation: return "QuasiConcavityViolation";
    case ErrorCode::InfeasibleEws: return "InfeasibleEws";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::AsymptoteError: return "AsymptoteError";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ExpansionMismatch: return "ExpansionMismatch";
    case ErrorCode::SignContractViolation: return "SignContractViolation";
    case ErrorCode::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::IncidenceViolation: return "IncidenceViolation";
    case ErrorCode::BoundaryAmbiguity: return "BoundaryAmbiguity";
    case ErrorCode::UnmappedRegion: return "UnmappedRegion";
    case ErrorCode::NoEquilibrium: return "NoEquilibrium";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::IdentityFailure: return "IdentityFailure";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) {
  switch (code) {
    case ErrorCode::ExpansionMismatch:
    case ErrorCode::SignContractViolation:
    case ErrorCode::ReciprocityViolation:
    case ErrorCode::IncidenceViolation:
    case ErrorCode::UnmappedRegion:
    case ErrorCode::OracleMismatch:
    case ErrorCode::IdentityFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace ews
