#include "mnpp/ladder.hpp"

#include <limits>

namespace mnpp {

Allocation allocate(const Instance& inst, std::span<const OutletId> ladder) {
  Allocation alloc(static_cast<std::size_t>(inst.n_demands()));
  for (OutletId f : ladder) {
    for (auto idx : inst.outlet_edges(f)) {
      const DemandId e = inst.edge(idx).demand;
      if (!alloc.is_assigned(e)) alloc.assign(e, f);
    }
  }
  return alloc;
}

namespace {

constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

// own[i * n_m + m]: revenue of the demands allocated to ladder[i] at price b(m).
std::vector<double> stage_revenue(const Instance& inst, std::span<const OutletId> ladder,
                                  const Allocation& alloc) {
  const std::size_t n_m = inst.grid().size();
  std::vector<double> own(ladder.size() * n_m, 0.0);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const OutletId f = ladder[i];
    for (auto idx : inst.outlet_edges(f)) {
      if (alloc.outlet_of(inst.edge(idx).demand) != f) continue;
      for (std::size_t m = 0; m < n_m; ++m) {
        own[i * n_m + m] += inst.edge_revenue(idx, m).raw();
      }
    }
  }
  return own;
}

// DP restricted to grid indices [lo, hi].
DpResult solve_window(std::span<const OutletId> ladder, const std::vector<double>& own,
                      std::size_t n_m, std::size_t lo, std::size_t hi, LadderTies ties) {
  const std::size_t n = ladder.size();
  const std::size_t w = hi - lo + 1;

  // prefix_arg[i * w + k]: argmax_{j <= k} G(i, j), highest j on ties.
  std::vector<std::size_t> prefix_arg(n * w);
  std::vector<double> prefix(w), current(w);

  auto strict_step = [&](std::size_t i) {
    return ties == LadderTies::kIndexOrder && ladder[i] < ladder[i - 1];
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < w; ++k) {
      const double gain = own[i * n_m + lo + k];
      if (i == 0) {
        current[k] = gain;
      } else if (strict_step(i)) {
        current[k] = k == 0 ? kInfeasible : gain + prefix[k - 1];
      } else {
        current[k] = gain + prefix[k];
      }
    }
    for (std::size_t k = 0; k < w; ++k) {
      if (k == 0 || current[k] >= prefix[k - 1]) {
        prefix[k] = current[k];
        prefix_arg[i * w + k] = k;
      } else {
        prefix[k] = prefix[k - 1];
        prefix_arg[i * w + k] = prefix_arg[i * w + k - 1];
      }
    }
  }

  DpResult out;
  out.price_index.assign(n, 0);
  std::size_t k = prefix_arg[(n - 1) * w + (w - 1)];
  out.revenue = Revenue::from_raw(prefix[w - 1]);
  for (std::size_t i = n; i-- > 0;) {
    out.price_index[i] = lo + k;
    if (i == 0) break;
    if (strict_step(i)) {
      // k >= 1 whenever the chosen state is feasible
      k = k == 0 ? 0 : prefix_arg[(i - 1) * w + k - 1];
    } else {
      k = prefix_arg[(i - 1) * w + k];
    }
  }
  return out;
}

}  // namespace

DpResult dp_prices(const Instance& inst, std::span<const OutletId> ladder,
                   const Allocation& alloc, const DpOptions& options) {
  const auto& grid = inst.grid();
  const std::size_t n_m = grid.size();
  if (ladder.empty()) return DpResult{{}, Revenue{}};

  const auto own = stage_revenue(inst, ladder, alloc);
  if (!options.enforce_pi || !inst.pi()) {
    return solve_window(ladder, own, n_m, 0, n_m - 1, options.ties);
  }

  std::optional<DpResult> best;
  for (std::size_t lo = 0; lo < n_m; ++lo) {
    const std::size_t hi = *grid.floor_index(grid[lo] + *inst.pi());
    DpResult candidate = solve_window(ladder, own, n_m, lo, hi, options.ties);
    if (!best || candidate.revenue >= best->revenue) best = std::move(candidate);
  }
  return *best;
}

Revenue ladder_revenue(const Instance& inst, const Allocation& alloc,
                       std::span<const OutletId> ladder, const DpOptions& options) {
  return dp_prices(inst, ladder, alloc, options).revenue;
}

std::vector<Money> ladder_prices(const Instance& inst, std::span<const OutletId> ladder,
                                 const DpResult& dp) {
  std::vector<Money> prices(static_cast<std::size_t>(inst.n_outlets()), inst.grid().max());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    prices[ladder[i]] = inst.grid()[dp.price_index[i]];
  }
  return prices;
}

}  // namespace mnpp
