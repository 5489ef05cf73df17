#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cat0 {

enum class ErrorKind {
  AsymmetricMatrix,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  DuplicateLabel,
  DegenerateVertex,
  EmptySubset,
  BadIndex,
  BadExponent,
  BadParams,
  ParamOutOfRange,
  TooManyPoints,
  PivotDegenerate,
  NotEmbeddable,
  LengthMismatch,
  DisconnectedComplex,
  BadBarycentric,
  DegenerateInput,
  NegativeLength,
  NotInteriorVertex,
  UnreachableMark,
  NoSuchVertex,
  NotATree,
  BadSplit,
  SearchFailed,
  BoxtimesViolated,
  CaseDispatchAmbiguous,
  ArityMismatch,
  PatternViolated,
  ParseError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::PivotDegenerate: return "PivotDegenerate";
    case ErrorKind::NotEmbeddable: return "NotEmbeddable";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DisconnectedComplex: return "DisconnectedComplex";
    case ErrorKind::BadBarycentric: return "BadBarycentric";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NegativeLength: return "NegativeLength";
    case ErrorKind::NotInteriorVertex: return "NotInteriorVertex";
    case ErrorKind::UnreachableMark: return "UnreachableMark";
    case ErrorKind::NoSuchVertex: return "NoSuchVertex";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::BoxtimesViolated: return "BoxtimesViolated";
    case ErrorKind::CaseDispatchAmbiguous: return "CaseDispatchAmbiguous";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::PatternViolated: return "PatternViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cat0
