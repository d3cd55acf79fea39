#pragma once

#include <span>
#include <vector>

#include "mnpp/model.hpp"

namespace mnpp {

/// Outlets in the order their prices must be non-decreasing. Only inserted
/// (active) outlets are stored.
using PriceLadder = std::vector<OutletId>;

/// How equal prices on consecutive ladder positions are treated.
enum class LadderTies {
  /// Non-decreasing prices; first-fit allocation decides who serves a demand.
  kFirstFit,
  /// Equal prices allowed only where outlet ids increase along the ladder, so
  /// first-fit agrees with the lowest-index market rule.
  kIndexOrder,
};

struct DpOptions {
  /// Restrict prices to windows [b(m0), b(m0) + pi] when the instance bounds
  /// the spread. Off by default.
  bool enforce_pi = false;
  LadderTies ties = LadderTies::kFirstFit;
};

struct DpResult {
  /// Grid index per ladder position.
  std::vector<std::size_t> price_index;
  Revenue revenue;
};

/// First-fit allocation: every demand goes to the earliest ladder outlet it is
/// connected to.
Allocation allocate(const Instance& inst, std::span<const OutletId> ladder);

/// Revenue-maximizing non-decreasing prices along the ladder for a fixed
/// allocation. Among equal-revenue choices the highest price wins at every
/// stage.
DpResult dp_prices(const Instance& inst, std::span<const OutletId> ladder,
                   const Allocation& alloc, const DpOptions& options = {});

Revenue ladder_revenue(const Instance& inst, const Allocation& alloc,
                       std::span<const OutletId> ladder, const DpOptions& options = {});

/// Full price vector from a DP result; outlets outside the ladder get the
/// grid maximum.
std::vector<Money> ladder_prices(const Instance& inst, std::span<const OutletId> ladder,
                                 const DpResult& dp);

}  // namespace mnpp
