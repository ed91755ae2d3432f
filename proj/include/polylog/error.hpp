#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polylog {

enum class ErrorKind {
  MalformedPrefix,
  UnknownToken,
  NotRational,
  ZeroDenominator,
  PoleEncountered,
  BranchCutAmbiguous,
  EmptyExpression,
  RepeatedIdentityOnTerm,
  TokenBudgetExceeded,
  NonUniformWeight,
  UnsupportedNode,
  UnsupportedWeight,
  WrongWeight,
  DegenerateDeterminant,
  NonInvertibleSubstitution,
  NodeBudgetExceeded,
  EpisodeFinished,
  ProtocolError,
  ExhaustedRetries,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polylog
