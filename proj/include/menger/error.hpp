#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace menger {

enum class ErrorKind {
  InvalidParams,
  DegenerateEdge,
  MidpointCollision,
  MidpointCoincidence,
  NonDistinctEdges,
  DimensionMismatch,
  PartitionMismatch,
  SingularSystem,
  RestorationDiverged,
  StepsizeUnderflow,
  NoDescent,
  InvalidInitialCurve,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
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
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DegenerateEdge: return "DegenerateEdge";
    case ErrorKind::MidpointCollision: return "MidpointCollision";
    case ErrorKind::MidpointCoincidence: return "MidpointCoincidence";
    case ErrorKind::NonDistinctEdges: return "NonDistinctEdges";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PartitionMismatch: return "PartitionMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::RestorationDiverged: return "RestorationDiverged";
    case ErrorKind::StepsizeUnderflow: return "StepsizeUnderflow";
    case ErrorKind::NoDescent: return "NoDescent";
    case ErrorKind::InvalidInitialCurve: return "InvalidInitialCurve";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace menger
