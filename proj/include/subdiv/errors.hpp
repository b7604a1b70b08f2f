#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subdiv {

enum class ErrorKind {
  LoopArc,
  VertexOutOfRange,
  EmptyGraph,
  DegeneratePattern,
  ArcPresent,
  SameVertex,
  VertexInSet,
  BudgetExceeded,
  WrongKind,
  BadTarget,
  ChainTooPoor,
  EndpointMismatch,
  OverlapViolation,
  Disjoint,
  BadStar,
  ClosureInvalid,
  PropertyViolated,
  PreconditionUnverifiable,
  RetriesExhausted,
  StuckGreedy,
  BadParams,
  PreconditionViolated,
  DepthBudgetExceeded,
  PropertyMismatch,
  TooLarge,
  ParseError,
  InvariantBroken,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace subdiv
