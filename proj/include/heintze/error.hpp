#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heintze {

enum class ErrorCode {
  DimensionMismatch,
  AntisymmetryViolation,
  JacobiViolation,
  NotNilpotent,
  NotASubalgebra,
  NotAnIdeal,
  LeibnizViolation,
  IrrationalOrComplexSpectrum,
  NonPositiveEigenvalue,
  NotClassC,
  ClassTooHigh,
  MuTooSmall,
  DegenerateCurve,
  TooLarge,
  InvalidGraph,
  InvalidInput,
  ParameterOutOfRange,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotASubalgebra: return "NotASubalgebra";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::LeibnizViolation: return "LeibnizViolation";
    case ErrorCode::IrrationalOrComplexSpectrum: return "IrrationalOrComplexSpectrum";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::NotClassC: return "NotClassC";
    case ErrorCode::ClassTooHigh: return "ClassTooHigh";
    case ErrorCode::MuTooSmall: return "MuTooSmall";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable code plus the offending basis
/// indices (0-based internally, rendered 1-based in what()).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::vector<std::size_t> where, const std::string& detail = {})
      : std::runtime_error(render(code, where, detail)), code_(code), where_(std::move(where)) {}

  Error(ErrorCode code, std::initializer_list<std::size_t> where, const std::string& detail = {})
      : Error(code, std::vector<std::size_t>(where), detail) {}

  Error(ErrorCode code, const std::string& detail)
      : Error(code, std::vector<std::size_t>{}, detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& where() const noexcept { return where_; }

 private:
  static std::string render(ErrorCode code, const std::vector<std::size_t>& where,
                            const std::string& detail) {
    std::string s(to_string(code));
    if (!where.empty()) {
      s += '(';
      for (std::size_t i = 0; i < where.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(where[i] + 1);
      }
      s += ')';
    }
    if (!detail.empty()) {
      s += ": ";
      s += detail;
    }
    return s;
  }

  ErrorCode code_;
  std::vector<std::size_t> where_;
};

}  // namespace heintze
