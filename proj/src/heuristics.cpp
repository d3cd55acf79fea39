#include "mnpp/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mnpp/errors.hpp"
#include "mnpp/formulations.hpp"

namespace mnpp {

namespace {

struct AlgorithmName {
  Algorithm alg;
  std::string_view name;
};

constexpr AlgorithmName kAlgorithmNames[] = {
    {Algorithm::kSp, "sp"},           {Algorithm::kGreedy, "greedy"},
    {Algorithm::kOrder, "order"},     {Algorithm::kFi, "fi"},
    {Algorithm::kGreedyI, "greedyI"}, {Algorithm::kOrderI, "orderI"},
    {Algorithm::kIp1I, "ip1I"},       {Algorithm::kIp2I, "ip2I"},
    {Algorithm::kIp1, "ip1"},         {Algorithm::kIp2, "ip2"},
};

std::vector<OutletId> all_outlets(const Instance& inst) {
  std::vector<OutletId> out(inst.n_outlets());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Tracks DP invocations made on behalf of one heuristic run.
struct Pricer {
  const Instance& inst;
  const DpOptions& options;
  std::size_t calls = 0;

  DpResult operator()(std::span<const OutletId> ladder) {
    ++calls;
    return dp_prices(inst, ladder, allocate(inst, ladder), options);
  }
};

HeuristicResult finish(const Instance& inst, std::string name, PriceLadder ladder,
                       const DpResult& dp, std::size_t dp_calls) {
  HeuristicResult out;
  out.algorithm = std::move(name);
  out.prices = ladder_prices(inst, ladder, dp);
  out.ladder = std::move(ladder);
  out.search_revenue = dp.revenue;
  out.revenue = evaluate_prices(inst, out.prices).revenue;
  out.dp_calls = dp_calls;
  return out;
}

// Outlets of the pool not yet on the ladder, ascending.
void append_leftovers(PriceLadder& ladder, std::span<const OutletId> pool) {
  std::vector<OutletId> rest;
  for (OutletId f : pool) {
    if (std::find(ladder.begin(), ladder.end(), f) == ladder.end()) rest.push_back(f);
  }
  std::sort(rest.begin(), rest.end());
  ladder.insert(ladder.end(), rest.begin(), rest.end());
}

}  // namespace

std::string_view to_string(Algorithm alg) {
  for (const auto& entry : kAlgorithmNames) {
    if (entry.alg == alg) return entry.name;
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  for (const auto& entry : kAlgorithmNames) {
    if (entry.name == text) return entry.alg;
  }
  throw InputError("unknown algorithm '" + std::string(text) + "'");
}

bool is_exact_mip(Algorithm alg) { return alg == Algorithm::kIp1 || alg == Algorithm::kIp2; }

// ---------------------------------------------------------------------------

SinglePriceResult single_price(const Instance& inst, bool include_match) {
  const auto& grid = inst.grid();
  SinglePriceResult best;
  double best_raw = -1.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    Revenue rev;
    for (DemandId e = 0; e < inst.n_demands(); ++e) {
      const auto ceiling = inst.war_ceiling(e);
      const bool war = ceiling && m <= *ceiling;
      const bool match = include_match && grid[m] == inst.demand(e).competitor_price;
      if (!war && !match) continue;
      Revenue top;
      for (auto idx : inst.demand_edges(e)) top = std::max(top, inst.edge_revenue(idx, m));
      rev += top;
    }
    if (best_raw < rev.raw()) {
      best_raw = rev.raw();
      best = {m, grid[m], rev};
    }
  }
  return best;
}

SelectionResult greedy_select(const Instance& inst, std::span<const OutletId> pool,
                              const HeuristicOptions& options) {
  Pricer price{inst, options.dp};
  SelectionResult out;
  std::vector<OutletId> remaining(pool.begin(), pool.end());
  std::sort(remaining.begin(), remaining.end());
  std::vector<bool> active(inst.n_demands(), true);
  std::size_t n_active = static_cast<std::size_t>(inst.n_demands());
  std::optional<DpResult> last;

  while (!remaining.empty() && n_active > 0) {
    options.deadline.check();
    double best_raw = -1.0;
    std::size_t best_pos = 0;
    DpResult best_dp;
    PriceLadder trial = out.ladder;
    trial.push_back(-1);
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      trial.back() = remaining[i];
      DpResult dp = price(trial);
      if (dp.revenue.raw() > best_raw) {
        best_raw = dp.revenue.raw();
        best_pos = i;
        best_dp = std::move(dp);
      }
    }
    const OutletId chosen = remaining[best_pos];
    out.ladder.push_back(chosen);
    last = std::move(best_dp);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    for (auto idx : inst.outlet_edges(chosen)) {
      const DemandId e = inst.edge(idx).demand;
      if (active[e]) {
        active[e] = false;
        --n_active;
      }
    }
  }

  if (!remaining.empty() || !last) {
    append_leftovers(out.ladder, pool);
    last = price(out.ladder);
  }
  out.dp = std::move(*last);
  out.dp_calls = price.calls;
  return out;
}

PriceLadder order_select(const Instance& inst, std::span<const OutletId> pool, bool argmax) {
  std::set<OutletId> remaining(pool.begin(), pool.end());
  std::vector<bool> active(inst.n_demands(), true);
  std::size_t n_active = static_cast<std::size_t>(inst.n_demands());
  PriceLadder ladder;

  auto deactivate = [&](DemandId e) {
    if (active[e]) {
      active[e] = false;
      --n_active;
    }
  };

  while (!remaining.empty() && n_active > 0) {
    DemandId cheapest = -1;
    for (DemandId e = 0; e < inst.n_demands(); ++e) {
      if (active[e] && (cheapest < 0 || inst.demand(e).competitor_price <
                                            inst.demand(cheapest).competitor_price)) {
        cheapest = e;
      }
    }
    std::vector<std::size_t> candidates;  // edge indices from the cheapest demand
    for (auto idx : inst.demand_edges(cheapest)) {
      if (remaining.count(inst.edge(idx).outlet) != 0) candidates.push_back(idx);
    }
    if (candidates.empty()) {
      deactivate(cheapest);
      continue;
    }

    OutletId chosen = -1;
    double chosen_score = 0.0;
    for (auto cand : candidates) {
      const OutletId f = inst.edge(cand).outlet;
      double score = 0.0;
      for (auto idx : inst.outlet_edges(f)) {
        const DemandId e = inst.edge(idx).demand;
        if (!active[e]) continue;
        const auto& node = inst.demand(e);
        const double c = node.competitor_price.value();
        double captured;
        if (inst.model() == ModelKind::kMnpp) {
          captured = node.volume.value() * node.war_share.value();
        } else {
          const auto& edge = inst.edge(idx);
          captured = node.volume.value() * logit_share(edge.war_intercept - edge.war_slope * c);
        }
        score += captured * c;
      }
      const bool better = argmax ? score > chosen_score : score < chosen_score;
      if (chosen < 0 || better) {
        chosen = f;
        chosen_score = score;
      }
    }

    ladder.push_back(chosen);
    remaining.erase(chosen);
    for (auto idx : inst.outlet_edges(chosen)) deactivate(inst.edge(idx).demand);
  }

  append_leftovers(ladder, pool);
  return ladder;
}

InsertResult insert(const Instance& inst, std::span<const OutletId> ladder, OutletId f,
                    const DpOptions& dp) {
  if (std::find(ladder.begin(), ladder.end(), f) != ladder.end()) {
    throw InputError("outlet " + std::to_string(f) + " is already on the ladder");
  }
  Pricer price{inst, dp};
  InsertResult out;
  double best_raw = -1.0;
  PriceLadder trial(ladder.begin(), ladder.end());
  trial.insert(trial.begin(), f);
  for (std::size_t j = 0; j <= ladder.size(); ++j) {
    if (j > 0) std::swap(trial[j - 1], trial[j]);
    DpResult result = price(trial);
    if (result.revenue.raw() > best_raw) {
      best_raw = result.revenue.raw();
      out.position = j;
      out.ladder = trial;
      out.dp = std::move(result);
    }
  }
  out.dp_calls = price.calls;
  return out;
}

HeuristicResult insertion_from_order(const Instance& inst, std::span<const OutletId> order,
                                     const HeuristicOptions& options) {
  PriceLadder ladder;
  DpResult dp;
  std::size_t calls = 0;
  for (OutletId f : order) {
    options.deadline.check();
    InsertResult step = insert(inst, ladder, f, options.dp);
    calls += step.dp_calls;
    ladder = std::move(step.ladder);
    dp = std::move(step.dp);
  }
  return finish(inst, "insertion", std::move(ladder), dp, calls);
}

HeuristicResult run_single_price(const Instance& inst, const HeuristicOptions& options) {
  const auto sp = single_price(inst, options.sp_include_match);
  HeuristicResult out;
  out.algorithm = "sp";
  out.ladder = all_outlets(inst);
  out.prices.assign(static_cast<std::size_t>(inst.n_outlets()), sp.price);
  out.search_revenue = sp.revenue;
  out.revenue = evaluate_prices(inst, out.prices).revenue;
  return out;
}

HeuristicResult run_greedy(const Instance& inst, const HeuristicOptions& options) {
  const auto pool = all_outlets(inst);
  auto sel = greedy_select(inst, pool, options);
  return finish(inst, "greedy", std::move(sel.ladder), sel.dp, sel.dp_calls);
}

HeuristicResult run_order(const Instance& inst, const HeuristicOptions& options) {
  const auto pool = all_outlets(inst);
  PriceLadder ladder = order_select(inst, pool, options.order_argmax);
  Pricer price{inst, options.dp};
  const DpResult dp = price(ladder);
  return finish(inst, "order", std::move(ladder), dp, price.calls);
}

HeuristicResult full_insertion(const Instance& inst, const HeuristicOptions& options) {
  std::vector<OutletId> remaining = all_outlets(inst);
  PriceLadder ladder;
  DpResult dp;
  std::size_t calls = 0;
  while (!remaining.empty()) {
    options.deadline.check();
    std::optional<InsertResult> best;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      InsertResult step = insert(inst, ladder, remaining[i], options.dp);
      calls += step.dp_calls;
      if (!best || step.dp.revenue > best->dp.revenue) {
        best = std::move(step);
        best_i = i;
      }
    }
    ladder = std::move(best->ladder);
    dp = std::move(best->dp);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_i));
  }
  return finish(inst, "fi", std::move(ladder), dp, calls);
}

HeuristicResult compose_selection_insertion(const Instance& inst, Selector selector,
                                            const HeuristicOptions& options) {
  const auto pool = all_outlets(inst);
  std::vector<OutletId> order;
  std::size_t selection_calls = 0;
  std::string name;
  switch (selector) {
    case Selector::kGreedy: {
      auto sel = greedy_select(inst, pool, options);
      order = std::move(sel.ladder);
      selection_calls = sel.dp_calls;
      name = "greedyI";
      break;
    }
    case Selector::kOrder:
      order = order_select(inst, pool, options.order_argmax);
      name = "orderI";
      break;
    case Selector::kRelaxIp1:
    case Selector::kRelaxIp2: {
      const bool ip1 = selector == Selector::kRelaxIp1;
      name = ip1 ? "ip1I" : "ip2I";
      if (!options.solver) throw SolverError(name + " needs an external solver (none configured)");
      const double limit = options.deadline.remaining().value_or(3600.0);
      order = relax_order(inst, ip1 ? Formulation::kIp1 : Formulation::kIp2, *options.solver,
                          std::max(0.0, limit));
      break;
    }
  }
  HeuristicResult out = insertion_from_order(inst, order, options);
  out.algorithm = name;
  out.dp_calls += selection_calls;
  return out;
}

HeuristicResult run_heuristic(const Instance& inst, Algorithm alg, const HeuristicOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  HeuristicResult out;
  switch (alg) {
    case Algorithm::kSp: out = run_single_price(inst, options); break;
    case Algorithm::kGreedy: out = run_greedy(inst, options); break;
    case Algorithm::kOrder: out = run_order(inst, options); break;
    case Algorithm::kFi: out = full_insertion(inst, options); break;
    case Algorithm::kGreedyI: out = compose_selection_insertion(inst, Selector::kGreedy, options); break;
    case Algorithm::kOrderI: out = compose_selection_insertion(inst, Selector::kOrder, options); break;
    case Algorithm::kIp1I: out = compose_selection_insertion(inst, Selector::kRelaxIp1, options); break;
    case Algorithm::kIp2I: out = compose_selection_insertion(inst, Selector::kRelaxIp2, options); break;
    case Algorithm::kIp1:
    case Algorithm::kIp2:
      throw InputError(std::string(to_string(alg)) + " is an exact MIP, not a heuristic");
  }
  out.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace mnpp
