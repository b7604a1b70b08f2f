#include "subdiv/errors.hpp"

namespace subdiv {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LoopArc: return "LoopArc";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::DegeneratePattern: return "DegeneratePattern";
    case ErrorKind::ArcPresent: return "ArcPresent";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::VertexInSet: return "VertexInSet";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::BadTarget: return "BadTarget";
    case ErrorKind::ChainTooPoor: return "ChainTooPoor";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::OverlapViolation: return "OverlapViolation";
    case ErrorKind::Disjoint: return "Disjoint";
    case ErrorKind::BadStar: return "BadStar";
    case ErrorKind::ClosureInvalid: return "ClosureInvalid";
    case ErrorKind::PropertyViolated: return "PropertyViolated";
    case ErrorKind::PreconditionUnverifiable: return "PreconditionUnverifiable";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::StuckGreedy: return "StuckGreedy";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DepthBudgetExceeded: return "DepthBudgetExceeded";
    case ErrorKind::PropertyMismatch: return "PropertyMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantBroken: return "InvariantBroken";
  }
  return "Unknown";
}

}  // namespace subdiv
