#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spanforge {

enum class ErrorKind {
  DomainMismatch,
  CodomainMismatch,
  SquareDoesNotCommute,
  BaseMismatch,
  NotATwoCell,
  ConditionFails,
  MalformedTables,
  UnderlyingCategoryInvalid,
  SizeLimitExceeded,
  NotLex,
  NotInternalFunctor,
  NotAGroup,
  MalformedTable,
  KeyScheduleMismatch,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::SquareDoesNotCommute: return "SquareDoesNotCommute";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotATwoCell: return "NotATwoCell";
    case ErrorKind::ConditionFails: return "ConditionFails";
    case ErrorKind::MalformedTables: return "MalformedTables";
    case ErrorKind::UnderlyingCategoryInvalid: return "UnderlyingCategoryInvalid";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotLex: return "NotLex";
    case ErrorKind::NotInternalFunctor: return "NotInternalFunctor";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::KeyScheduleMismatch: return "KeyScheduleMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the engine carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spanforge
