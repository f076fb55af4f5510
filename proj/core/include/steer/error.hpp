#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steer {

enum class ErrorCode {
    KindMismatch,
    EmptyInput,
    EmptyKeepSet,
    BadPartyIndex,
    DomainError,
    DimensionMismatch,
    InvalidState,
    InvalidObservable,
    InvalidDistribution,
    BadPartition,
    BadArity,
    BadWeights,
    BadFamily,
    ParseError,
    OracleFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace steer
