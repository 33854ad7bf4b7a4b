#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geomkit {

enum class ErrorKind {
  NotPrimePower,
  BoundExceeded,
  NoInverse,
  UnknownPoint,
  BadRank,
  NotAMorphism,
  NotSurjective,
  SearchBudgetExceeded,
  EmptyFlat,
  NotSemiaffine,
  DegenerateImage,
  HypothesisViolated,
  FieldTooSmall,
  ZeroMap,
  NoSemilinearModel,
  NotAFlat,
  LinesTooShort,
  NotPartialMorphism,
  NotALine,
  DecompositionFailed,
  PoleHit,
  SelectionFailed,
  NotFound,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class GeomError : public std::runtime_error {
 public:
  GeomError(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace geomkit
