#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "mnpp/errors.hpp"

namespace mnpp {

/// Decimal fixed-point quantity stored as an integer count of 1/Scale units.
///
/// Prices, volumes and capture fractions are all held this way so that the
/// price-match event (p == c) and MNPP revenue sums are exact.
template <typename Tag, std::int64_t Scale>
class FixedPoint {
 public:
  static constexpr std::int64_t kScale = Scale;

  constexpr FixedPoint() = default;

  static constexpr FixedPoint from_units(std::int64_t units) {
    FixedPoint v;
    v.units_ = units;
    return v;
  }

  /// Converts a decimal value; throws InputError when it has more precision
  /// than the scale can hold.
  static FixedPoint from_double(double value) {
    if (!std::isfinite(value)) {
      throw InputError("non-finite value " + std::to_string(value));
    }
    const double scaled = value * static_cast<double>(Scale);
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, std::abs(scaled))) {
      throw InputError("value " + std::to_string(value) +
                       " is not a multiple of 1/" + std::to_string(Scale));
    }
    return from_units(static_cast<std::int64_t>(rounded));
  }

  /// Rounds to the nearest representable value (half away from zero).
  static FixedPoint rounded(double value) {
    return from_units(
        static_cast<std::int64_t>(std::llround(value * static_cast<double>(Scale))));
  }

  constexpr std::int64_t units() const { return units_; }
  constexpr double value() const {
    return static_cast<double>(units_) / static_cast<double>(Scale);
  }

  constexpr auto operator<=>(const FixedPoint&) const = default;

  constexpr FixedPoint operator+(FixedPoint o) const { return from_units(units_ + o.units_); }
  constexpr FixedPoint operator-(FixedPoint o) const { return from_units(units_ - o.units_); }

 private:
  std::int64_t units_ = 0;
};

struct MoneyTag {};
struct VolumeTag {};
struct ShareTag {};

/// Currency amount in cents.
using Money = FixedPoint<MoneyTag, 100>;
/// Demand volume in hundredths of a unit.
using Volume = FixedPoint<VolumeTag, 100>;
/// Capture fraction in ten-thousandths.
using Share = FixedPoint<ShareTag, 10000>;

/// Demand captured by an outlet, in units of 1/(Volume::kScale * Share::kScale).
/// Integer-valued for MNPP; fractional under the logit model.
using DemandUnits = double;

/// Revenue accumulator.
///
/// The raw value is price cents times DemandUnits, so every MNPP term is an
/// integer well below 2^53 and sums are exact in any order.
class Revenue {
 public:
  static constexpr double kScale = static_cast<double>(Money::kScale) *
                                   static_cast<double>(Volume::kScale) *
                                   static_cast<double>(Share::kScale);

  constexpr Revenue() = default;
  static constexpr Revenue from_raw(double raw) {
    Revenue r;
    r.raw_ = raw;
    return r;
  }
  static Revenue term(Money price, DemandUnits demand) {
    return from_raw(static_cast<double>(price.units()) * demand);
  }

  constexpr double raw() const { return raw_; }
  /// Currency value.
  constexpr double value() const { return raw_ / kScale; }

  constexpr auto operator<=>(const Revenue&) const = default;
  constexpr Revenue& operator+=(Revenue o) {
    raw_ += o.raw_;
    return *this;
  }
  constexpr Revenue operator+(Revenue o) const { return from_raw(raw_ + o.raw_); }
  constexpr Revenue operator-(Revenue o) const { return from_raw(raw_ - o.raw_); }

 private:
  double raw_ = 0.0;
};

}  // namespace mnpp
