#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsets {

enum class ErrorCode {
  // field construction and arithmetic
  NonPrimeCharacteristic,
  EvenCharacteristic,
  FieldTooSmall,
  ReducibleModulus,
  InvalidModulus,
  MixedFields,
  DivisionByZero,
  ZeroHasNoOrder,
  ParseError,
  // chains and pole sets
  ZeroConstant,
  ChainTooShort,
  ZeroAlpha,
  ZeroBetaLast,
  InvalidPoleSet,
  DegenerateDenominator,
  // family
  ZeroCoefficient,
  PoleAnchorMismatch,
  DuplicatePoles,
  InvalidN,
  BudgetExceeded,
  // constructions
  ZeroParameter,
  BadParameter,
  CongruenceViolation,
  NoSuchRoot,
  CharacteristicTooSmall,
  OrderMismatch,
  BadCosetRep,
  NotAGenerator,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroHasNoOrder: return "ZeroHasNoOrder";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroConstant: return "ZeroConstant";
    case ErrorCode::ChainTooShort: return "ChainTooShort";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::ZeroBetaLast: return "ZeroBetaLast";
    case ErrorCode::InvalidPoleSet: return "InvalidPoleSet";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::PoleAnchorMismatch: return "PoleAnchorMismatch";
    case ErrorCode::DuplicatePoles: return "DuplicatePoles";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::CongruenceViolation: return "CongruenceViolation";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::BadCosetRep: return "BadCosetRep";
    case ErrorCode::NotAGenerator: return "NotAGenerator";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vsets
