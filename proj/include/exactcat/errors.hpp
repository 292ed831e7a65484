#ifndef EXACTCAT_ERRORS_HPP
#define EXACTCAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace exactcat {

enum class ErrorCode {
  DomainMismatch,
  ShapeMismatch,
  ModelMismatch,
  InvalidObject,
  InvalidMorphism,
  NotAdmissible,
  NotAdmissibleMorphism,
  NotAnnihilating,
  NoSolution,
  NotASection,
  NotInjectiveTarget,
  NotInjectiveMiddle,
  BadComponentLift,
  BaseMismatch,
  BadBaseIso,
  DepthTooShallow,
  GeneratorExhausted,
  UnknownMutation,
  InternalCheckFailed,
  SchemaError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::InvalidObject: return "InvalidObject";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotAdmissibleMorphism: return "NotAdmissibleMorphism";
    case ErrorCode::NotAnnihilating: return "NotAnnihilating";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotASection: return "NotASection";
    case ErrorCode::NotInjectiveTarget: return "NotInjectiveTarget";
    case ErrorCode::NotInjectiveMiddle: return "NotInjectiveMiddle";
    case ErrorCode::BadComponentLift: return "BadComponentLift";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::BadBaseIso: return "BadBaseIso";
    case ErrorCode::DepthTooShallow: return "DepthTooShallow";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::UnknownMutation: return "UnknownMutation";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code table) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace exactcat

#endif  // EXACTCAT_ERRORS_HPP
