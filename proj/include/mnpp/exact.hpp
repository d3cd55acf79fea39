#pragma once

#include <cstdint>
#include <vector>

#include "mnpp/ladder.hpp"
#include "mnpp/model.hpp"

namespace mnpp {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 5'000'000;
inline constexpr int kMaxLadderOutlets = 8;

struct BruteForceResult {
  Revenue revenue;
  std::vector<Money> prices;
  std::uint64_t evaluated = 0;
};

/// Scores every grid price vector (pruned by the spread bound when finite).
/// Ties keep the lexicographically smallest vector. Throws
/// EnumerationTooLarge when |M|^|O| exceeds the limit.
BruteForceResult brute_force(const Instance& inst,
                             std::uint64_t limit = kDefaultEnumerationLimit,
                             TieRule ties = TieRule::kLowestIndex);

struct LadderExactResult {
  Revenue revenue;
  PriceLadder ladder;
  std::vector<Money> prices;
  std::uint64_t ladders = 0;
};

/// Best first-fit DP over every outlet permutation (|O| <= 8). With
/// LadderTies::kIndexOrder the DP value always equals the market revenue of
/// its prices, which makes the search exact for both demand models.
LadderExactResult ladder_exact(const Instance& inst, const DpOptions& options = {});

}  // namespace mnpp
