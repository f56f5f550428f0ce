#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entrobust {

enum class ErrorCode {
  ZeroVector,
  ShapeMismatch,
  ZeroFactor,
  TrivialLead,
  CancellationToZero,
  InvalidPartition,
  TooFewParties,
  NotBipartite,
  RankTooLow,
  MaximallyEntangledPair,
  NoRootFound,
  MaximallyEntangled,
  NotGHZForm,
  BaseNotEntangled,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace entrobust
