#pragma once

#include <limits>

#include <Eigen/Core>

namespace vpmacd {

/// A value series aligned index-for-index with its source bars. Slots that
/// are still warming up (or otherwise undefined) hold NaN and are false in
/// `valid`; `valid_from` is the first valid slot, or size() if none.
template <typename Scalar>
struct IndicatorSeries {
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

  Values values;
  Mask valid;
  Eigen::Index valid_from = 0;

  IndicatorSeries() = default;
  explicit IndicatorSeries(Eigen::Index n)
      : values(Values::Constant(n, std::numeric_limits<Scalar>::quiet_NaN())),
        valid(Mask::Constant(n, false)),
        valid_from(n) {}

  Eigen::Index size() const noexcept { return values.size(); }
  bool is_valid(Eigen::Index t) const { return t >= 0 && t < size() && valid[t]; }
  Scalar operator[](Eigen::Index t) const { return values[t]; }

  void set(Eigen::Index t, Scalar v) {
    values[t] = v;
    valid[t] = true;
    if (t < valid_from) valid_from = t;
  }

  /// Fully valid series wrapping `v`.
  template <typename Derived>
  static IndicatorSeries from_values(const Eigen::ArrayBase<Derived>& v) {
    IndicatorSeries s;
    s.values = v.template cast<Scalar>();
    s.valid = Mask::Constant(v.size(), true);
    s.valid_from = 0;
    return s;
  }
};

template <typename Scalar>
struct MacdTriple {
  IndicatorSeries<Scalar> macd_line;
  IndicatorSeries<Scalar> signal_line;
  IndicatorSeries<Scalar> histogram;
};

using Series = IndicatorSeries<double>;
using Macd = MacdTriple<double>;

}  // namespace vpmacd
