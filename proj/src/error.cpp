#include "vpmacd/error.hpp"

namespace vpmacd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnparsableRow: return "UnparsableRow";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::EmptyPartition: return "EmptyPartition";
    case ErrorCode::WindowExceedsSeries: return "WindowExceedsSeries";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::SignalDateNotInSeries: return "SignalDateNotInSeries";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NoTrades: return "NoTrades";
    case ErrorCode::NoWins: return "NoWins";
    case ErrorCode::NoLosses: return "NoLosses";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::NonPositiveLongRunVariance: return "NonPositiveLongRunVariance";
    case ErrorCode::BlockLongerThanSeries: return "BlockLongerThanSeries";
    case ErrorCode::DateMismatch: return "DateMismatch";
    case ErrorCode::NoFeasibleLambda: return "NoFeasibleLambda";
    case ErrorCode::InvalidBar: return "InvalidBar";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace vpmacd
