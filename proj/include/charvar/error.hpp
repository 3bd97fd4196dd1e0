#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charvar {

/// Error classes surfaced by the library. Each maps to a stable CLI exit code.
enum class ErrorKind {
  Usage,
  Parse,
  Io,
  DegenerateInput,
  NonUnivariate,
  WrongArity,
  EdgeNotOnPolygon,
  DegreeCap,
  InvalidCode,
  InconsistentFamily,
  EliminationCollapse,
  NoGeometricFactor,
  NoHyperbolicSolution,
  NonCommuting,
  NotHandled,
  Indeterminate,
  Untempered,
  BranchPoint,
  DivisorCollision,
  InsufficientSamples,
  OpenPath,
  ReconstructionFailure,
  Divergence,
  SingularInput,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace charvar
