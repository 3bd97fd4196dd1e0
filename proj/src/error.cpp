#include "charvar/error.hpp"

namespace charvar {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::NonUnivariate: return "non-univariate";
    case ErrorKind::WrongArity: return "wrong-arity";
    case ErrorKind::EdgeNotOnPolygon: return "edge-not-on-polygon";
    case ErrorKind::DegreeCap: return "degree-cap";
    case ErrorKind::InvalidCode: return "invalid-code";
    case ErrorKind::InconsistentFamily: return "inconsistent-family";
    case ErrorKind::EliminationCollapse: return "elimination-collapse";
    case ErrorKind::NoGeometricFactor: return "no-geometric-factor";
    case ErrorKind::NoHyperbolicSolution: return "no-hyperbolic-solution";
    case ErrorKind::NonCommuting: return "non-commuting";
    case ErrorKind::NotHandled: return "not-handled";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::Untempered: return "untempered-curve";
    case ErrorKind::BranchPoint: return "branch-point";
    case ErrorKind::DivisorCollision: return "divisor-collision";
    case ErrorKind::InsufficientSamples: return "insufficient-samples";
    case ErrorKind::OpenPath: return "open-path";
    case ErrorKind::ReconstructionFailure: return "reconstruction-failure";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::SingularInput: return "singular-input";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

// Stable, documented in README. Never renumber.
int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Parse: return 3;
    case ErrorKind::Io: return 4;
    case ErrorKind::DegenerateInput: return 10;
    case ErrorKind::NonUnivariate: return 11;
    case ErrorKind::WrongArity: return 12;
    case ErrorKind::EdgeNotOnPolygon: return 13;
    case ErrorKind::DegreeCap: return 14;
    case ErrorKind::InvalidCode: return 20;
    case ErrorKind::InconsistentFamily: return 21;
    case ErrorKind::EliminationCollapse: return 22;
    case ErrorKind::NoGeometricFactor: return 23;
    case ErrorKind::NoHyperbolicSolution: return 24;
    case ErrorKind::NonCommuting: return 30;
    case ErrorKind::NotHandled: return 31;
    case ErrorKind::Indeterminate: return 32;
    case ErrorKind::Untempered: return 33;
    case ErrorKind::BranchPoint: return 40;
    case ErrorKind::DivisorCollision: return 41;
    case ErrorKind::InsufficientSamples: return 42;
    case ErrorKind::OpenPath: return 43;
    case ErrorKind::ReconstructionFailure: return 44;
    case ErrorKind::Divergence: return 50;
    case ErrorKind::SingularInput: return 51;
    case ErrorKind::Internal: return 1;
  }
  return 1;
}

}  // namespace charvar
