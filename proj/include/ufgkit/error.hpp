#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ufgkit {

enum class ErrorKind {
  EmptyGroundSet,
  DuplicateLabel,
  GroundSetTooLarge,
  UnknownLabel,
  ReflexivePairRejected,
  NotTransitive,
  NotAntisymmetric,
  DuplicatePair,
  EmptyFamily,
  MixedGroundSets,
  IndexOutOfRange,
  ObjectNotInContext,
  Inconsistent,
  MemberNotInFamily,
  FamilyTooSmall,
  CombinatorialBudgetExceeded,
  NotUfgInput,
  InvalidArgument,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyGroundSet: return "EmptyGroundSet";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::GroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ReflexivePairRejected: return "ReflexivePairRejected";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::MixedGroundSets: return "MixedGroundSets";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ObjectNotInContext: return "ObjectNotInContext";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::MemberNotInFamily: return "MemberNotInFamily";
    case ErrorKind::FamilyTooSmall: return "FamilyTooSmall";
    case ErrorKind::CombinatorialBudgetExceeded: return "CombinatorialBudgetExceeded";
    case ErrorKind::NotUfgInput: return "NotUfgInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace ufgkit
