#include "vpmacd/signals.hpp"

#include <string>

namespace vpmacd {

std::string_view to_string(Side side) noexcept { return side == Side::Buy ? "Buy" : "Sell"; }

std::string_view to_string(Rule rule) noexcept {
  switch (rule) {
    case Rule::SignalCross: return "signal_cross";
    case Rule::ZeroCross: return "zero_cross";
    case Rule::LambdaAdjusted: return "lambda_adjusted";
  }
  return "unknown";
}

void check_lambda(double lambda) {
  constexpr double slack = 1e-12;
  if (!(lambda >= kLambdaMin - slack && lambda <= kLambdaMax + slack)) {
    throw Error(ErrorCode::LambdaOutOfRange,
                "lambda " + std::to_string(lambda) + " outside [0.8, 1.0]");
  }
}

}  // namespace vpmacd
