#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rrv {

enum class ErrorCode {
  MalformedRow,
  DuplicateKey,
  NegativeCount,
  MissingTotal,
  NameNotFound,
  MissingDenominator,
  NegativeMass,
  BudgetExceeded,
  DegenerateInputs,
  InconsistentScenario,
  UnresolvedReference,
  InconsistentPlant,
  ZeroSlots,
  InvalidConfiguration,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// All input and validation failures raised by the library. Anything else
// escaping the library is an internal error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rrv
