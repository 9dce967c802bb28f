#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsimp {

enum class ErrorCode {
  // terrain construction
  NonManifoldEdge,
  NonManifoldVertex,
  CrossingEdges,
  DuplicatePoint,
  DegenerateTriangle,
  InvalidIndex,
  UnusedVertex,
  // queries
  BoundaryVertex,
  BoundaryEdge,
  OutsideDomain,
  DomainMismatch,
  NotOnLink,
  // filtrations
  NonMonotoneFunction,
  // local edits
  NotConvex,
  NotRegular,
  WrongDegree,
  InvalidDiagonalSet,
  // simplification
  NonGenericEpsilon,
  InvalidEpsilon,
  InfeasiblePlacement,
  InternalInvariant,
  // io
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type thrown by the library; inspect code() to dispatch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsimp
