#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypc {

enum class ErrorKind {
  NotOnLattice,
  ZeroBase,
  ParseError,
  PoleAtPoint,
  Indeterminate,
  DenominatorPole,
  SeriesDivergent,
  BudgetExceeded,
  ParameterCollision,
  ResonantParameters,
  OnUnitCircle,
  NotAbsolutelyConvergent,
  QuadratureBudgetExceeded,
  OscillationTooSlow,
  NotL2,
  NonUnimodular,
  DegenerateMatrix,
  UnknownSuite,
};

constexpr std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotOnLattice: return "NotOnLattice";
    case ErrorKind::ZeroBase: return "ZeroBase";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::DenominatorPole: return "DenominatorPole";
    case ErrorKind::SeriesDivergent: return "SeriesDivergent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParameterCollision: return "ParameterCollision";
    case ErrorKind::ResonantParameters: return "ResonantParameters";
    case ErrorKind::OnUnitCircle: return "OnUnitCircle";
    case ErrorKind::NotAbsolutelyConvergent: return "NotAbsolutelyConvergent";
    case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorKind::OscillationTooSlow: return "OscillationTooSlow";
    case ErrorKind::NotL2: return "NotL2";
    case ErrorKind::NonUnimodular: return "NonUnimodular";
    case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

// Every failure in the library is reported through this type; `kind()` is
// the machine-readable part, `what()` carries detail for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypc
