#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/deadline.hpp"
#include "mnpp/ladder.hpp"
#include "mnpp/model.hpp"
#include "mnpp/solver_adapter.hpp"

namespace mnpp {

enum class Algorithm { kSp, kGreedy, kOrder, kFi, kGreedyI, kOrderI, kIp1I, kIp2I, kIp1, kIp2 };

std::string_view to_string(Algorithm alg);
Algorithm parse_algorithm(std::string_view text);
/// True for the two exact MIP formulations (solved externally).
bool is_exact_mip(Algorithm alg);

/// Source of the outlet order fed to the insertion phase.
enum class Selector { kGreedy, kOrder, kRelaxIp1, kRelaxIp2 };

struct HeuristicOptions {
  DpOptions dp;
  /// Single price: also count price-match demand when scoring a price.
  bool sp_include_match = false;
  /// Outlet ordering: pick the highest score instead of the lowest.
  bool order_argmax = false;
  Deadline deadline;
  /// Needed by the LP-relaxation selectors.
  std::optional<SolverAdapter> solver;
};

struct HeuristicResult {
  std::string algorithm;
  PriceLadder ladder;
  std::vector<Money> prices;
  /// Realized revenue of `prices` under the market allocation rule.
  Revenue revenue;
  /// Objective the algorithm optimized (DP value, or the single-price score).
  Revenue search_revenue;
  std::size_t dp_calls = 0;
  std::chrono::duration<double> wall_time{};
};

struct SinglePriceResult {
  std::size_t price_index = 0;
  Money price;
  Revenue revenue;
};

/// One common price for every outlet, scoring only price-war demand unless
/// include_match is set. Lowest price wins ties.
SinglePriceResult single_price(const Instance& inst, bool include_match = false);

struct SelectionResult {
  PriceLadder ladder;
  DpResult dp;
  std::size_t dp_calls = 0;
};

/// Greedy selection: repeatedly append the pool outlet that maximizes the
/// DP revenue of the extended ladder.
SelectionResult greedy_select(const Instance& inst, std::span<const OutletId> pool,
                              const HeuristicOptions& options = {});

/// Outlet ordering: walk demands by ascending competitor price and append
/// the connected outlet with the lowest (or highest) revenue-potential score.
PriceLadder order_select(const Instance& inst, std::span<const OutletId> pool,
                         bool argmax = false);

struct InsertResult {
  PriceLadder ladder;
  std::size_t position = 0;
  DpResult dp;
  std::size_t dp_calls = 0;
};

/// Best position for f in the ladder, keeping the relative order of the
/// outlets already there. Lowest position wins ties.
InsertResult insert(const Instance& inst, std::span<const OutletId> ladder, OutletId f,
                    const DpOptions& dp = {});

/// Insert every outlet of `order` in sequence.
HeuristicResult insertion_from_order(const Instance& inst, std::span<const OutletId> order,
                                     const HeuristicOptions& options = {});

HeuristicResult run_single_price(const Instance& inst, const HeuristicOptions& options = {});
HeuristicResult run_greedy(const Instance& inst, const HeuristicOptions& options = {});
HeuristicResult run_order(const Instance& inst, const HeuristicOptions& options = {});
/// Full insertion: every step commits the best (outlet, position) pair over all
/// remaining outlets.
HeuristicResult full_insertion(const Instance& inst, const HeuristicOptions& options = {});
HeuristicResult compose_selection_insertion(const Instance& inst, Selector selector,
                                            const HeuristicOptions& options = {});

/// Dispatch for the heuristic algorithms (not the exact MIPs).
HeuristicResult run_heuristic(const Instance& inst, Algorithm alg,
                              const HeuristicOptions& options = {});

}  // namespace mnpp
