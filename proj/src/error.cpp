#include "geomkit/error.hpp"

namespace geomkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::EmptyFlat: return "EmptyFlat";
    case ErrorKind::NotSemiaffine: return "NotSemiaffine";
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::ZeroMap: return "ZeroMap";
    case ErrorKind::NoSemilinearModel: return "NoSemilinearModel";
    case ErrorKind::NotAFlat: return "NotAFlat";
    case ErrorKind::LinesTooShort: return "LinesTooShort";
    case ErrorKind::NotPartialMorphism: return "NotPartialMorphism";
    case ErrorKind::NotALine: return "NotALine";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::SelectionFailed: return "SelectionFailed";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

GeomError::GeomError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw GeomError(kind, what); }

}  // namespace geomkit
