#pragma once

#include <stdexcept>
#include <string>

namespace l1split {

enum class ErrorKind {
  ZeroLeadingCoefficient,
  OrderMismatch,
  NegativeRadicand,
  CollisionSingularity,
  ChartMismatch,
  DegenerateCircle,
  NotAnEquilibrium,
  NoRealUnstableDirection,
  StepUnderflow,
  CollisionApproach,
  NoCrossing,
  ResonantOrder,
  SingularSolve,
  DomainCollapse,
  CollisionPoint,
  HyperbolicState,
  NearParabolic,
  NegativeAction,
  DomainError,
  RouteMismatch,
  BelowDeskFloor,
  BranchMisidentified,
  NonpositiveValue,
  DegenerateAbscissae,
  DuplicateAbscissae,
  IllConditioned,
  ConfigInvalid,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace l1split
