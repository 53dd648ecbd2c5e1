#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohn {

enum class ErrorKind {
  MixedOwners,
  MixedRings,
  UnsupportedEdgeClass,
  UnsupportedGroupClass,
  UnsupportedRing,
  RelationViolation,
  InvalidMorphism,
  InvalidGroup,
  UnknownGenerator,
  ShapeMismatch,
  NotSplitInjective,
  NotAcyclic,
  NotAUnit,
  NonSquare,
  NoFormData,
  NonFreeComponent,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind mirrors the named error conditions of each operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedOwners: return "MixedOwners";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::UnsupportedEdgeClass: return "UnsupportedEdgeClass";
    case ErrorKind::UnsupportedGroupClass: return "UnsupportedGroupClass";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::RelationViolation: return "RelationViolation";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotSplitInjective: return "NotSplitInjective";
    case ErrorKind::NotAcyclic: return "NotAcyclic";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NoFormData: return "NoFormData";
    case ErrorKind::NonFreeComponent: return "NonFreeComponent";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace cohn
