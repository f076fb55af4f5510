#include "steer/error.hpp"

namespace steer {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorCode::BadPartyIndex: return "BadPartyIndex";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::InvalidObservable: return "InvalidObservable";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::BadArity: return "BadArity";
        case ErrorCode::BadWeights: return "BadWeights";
        case ErrorCode::BadFamily: return "BadFamily";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::OracleFailure: return "OracleFailure";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace steer
