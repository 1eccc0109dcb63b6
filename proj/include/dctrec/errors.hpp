#pragma once

#include <stdexcept>
#include <string>

namespace dctrec {

enum class ErrorCode {
  Unknown = 1,
  UnsupportedFormat = 2,
  CorruptFile = 3,
  NotGrayscale = 4,
  IoFailure = 5,
  IndivisibleDimensions = 6,
  InvalidCount = 7,
  DimensionMismatch = 8,
  NotDcOnlyMask = 9,
  RecoveryFailed = 10,
  EmptyInput = 11,
  TooSmall = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // Process exit status used by the CLI; one value per error class.
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace dctrec
