#ifndef BWM_ERROR_HPP
#define BWM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bwm {

enum class Errc {
  OutOfScale,
  NotDominant,
  BadIndices,
  TooSmall,
  Incomplete,
  Inconsistent,
  NotReciprocal,
  Disconnected,
  SingularSystem,
  TooLarge,
  LengthMismatch,
  InvalidP,
  TooSmallN,
  BudgetExceeded,
  InvalidScale,
  DegenerateP,
  InvalidConfig,
  Parse,
};

inline constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::OutOfScale: return "OutOfScale";
    case Errc::NotDominant: return "NotDominant";
    case Errc::BadIndices: return "BadIndices";
    case Errc::TooSmall: return "TooSmall";
    case Errc::Incomplete: return "Incomplete";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NotReciprocal: return "NotReciprocal";
    case Errc::Disconnected: return "Disconnected";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::TooLarge: return "TooLarge";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidP: return "InvalidP";
    case Errc::TooSmallN: return "TooSmallN";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidScale: return "InvalidScale";
    case Errc::DegenerateP: return "DegenerateP";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// code distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bwm

#endif  // BWM_ERROR_HPP
