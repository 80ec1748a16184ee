#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace commlab {

enum class Errc {
  UnknownGenerator,
  MalformedExponent,
  MalformedInput,
  InvalidSpec,
  InvalidCosetTable,
  InvalidHomomorphism,
  MembershipUnknown,
  BudgetExceeded,
  AuxiliarySearchFailed,
  TransversalIncomplete,
  LiftSearchFailed,
  ProfileNotStabilized,
  PreconditionViolation,
};

std::string_view to_string(Errc code) noexcept;

// Every library failure is reported through this type; the code lets the
// CLI and tests distinguish the cases without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace commlab
