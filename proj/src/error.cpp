#include "polylog/error.hpp"

namespace polylog {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPrefix: return "MalformedPrefix";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::BranchCutAmbiguous: return "BranchCutAmbiguous";
    case ErrorKind::EmptyExpression: return "EmptyExpression";
    case ErrorKind::RepeatedIdentityOnTerm: return "RepeatedIdentityOnTerm";
    case ErrorKind::TokenBudgetExceeded: return "TokenBudgetExceeded";
    case ErrorKind::NonUniformWeight: return "NonUniformWeight";
    case ErrorKind::UnsupportedNode: return "UnsupportedNode";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::WrongWeight: return "WrongWeight";
    case ErrorKind::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorKind::NonInvertibleSubstitution: return "NonInvertibleSubstitution";
    case ErrorKind::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorKind::EpisodeFinished: return "EpisodeFinished";
    case ErrorKind::ProtocolError: return "ProtocolError";
    case ErrorKind::ExhaustedRetries: return "ExhaustedRetries";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace polylog
