#pragma once

#include <stdexcept>
#include <string>

namespace tropcob {

enum class ErrorKind {
  Parse,
  DimensionMismatch,
  Singular,
  RankDeficient,
  NotSymmetric,
  NotIntegral,
  NotPositiveDefinite,
  NotAPeriod,
  MalformedComplex,
  NotTransverse,
  Exhausted,
  NotDegreeZero,
  TorusMismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotAPeriod: return "NotAPeriod";
    case ErrorKind::MalformedComplex: return "MalformedComplex";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NotDegreeZero: return "NotDegreeZero";
    case ErrorKind::TorusMismatch: return "TorusMismatch";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tropcob
