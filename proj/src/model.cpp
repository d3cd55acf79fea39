#include "mnpp/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace mnpp {

std::string_view to_string(ModelKind kind) {
  return kind == ModelKind::kMnpp ? "mnpp" : "bmnpp";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "mnpp" || text == "MNPP") return ModelKind::kMnpp;
  if (text == "bmnpp" || text == "BMNPP") return ModelKind::kBmnpp;
  throw InputError("unknown model kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// PriceGrid

PriceGrid::PriceGrid(std::vector<Money> prices) : prices_(std::move(prices)) {
  if (prices_.empty()) throw InputError("price grid is empty");
  if (prices_.front() < Money{}) throw InputError("price grid has a negative price");
  for (std::size_t m = 1; m < prices_.size(); ++m) {
    if (!(prices_[m - 1] < prices_[m])) {
      throw InputError("price grid is not strictly increasing at index " + std::to_string(m));
    }
  }
}

PriceGrid PriceGrid::uniform(Money lo, Money hi, Money step) {
  if (step <= Money{}) throw InputError("price grid step must be positive");
  if (hi < lo) throw InputError("price grid max is below min");
  std::vector<Money> prices;
  for (Money p = lo; p <= hi; p = p + step) prices.push_back(p);
  return PriceGrid(std::move(prices));
}

std::optional<std::size_t> PriceGrid::index_of(Money p) const {
  auto it = std::lower_bound(prices_.begin(), prices_.end(), p);
  if (it == prices_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - prices_.begin());
}

std::optional<std::size_t> PriceGrid::below_index(Money c) const {
  auto it = std::lower_bound(prices_.begin(), prices_.end(), c);
  if (it == prices_.begin()) return std::nullopt;
  return static_cast<std::size_t>(it - prices_.begin()) - 1;
}

std::optional<std::size_t> PriceGrid::floor_index(Money p) const {
  auto it = std::upper_bound(prices_.begin(), prices_.end(), p);
  if (it == prices_.begin()) return std::nullopt;
  return static_cast<std::size_t>(it - prices_.begin()) - 1;
}

std::size_t PriceGrid::snap_index(Money p) const {
  auto it = std::lower_bound(prices_.begin(), prices_.end(), p);
  if (it == prices_.end()) return prices_.size() - 1;
  if (it == prices_.begin() || *it == p) return static_cast<std::size_t>(it - prices_.begin());
  const auto up = static_cast<std::size_t>(it - prices_.begin());
  const auto down = up - 1;
  const auto d_up = prices_[up].units() - p.units();
  const auto d_down = p.units() - prices_[down].units();
  return d_up < d_down ? up : down;
}

std::optional<Money> price_below(const PriceGrid& grid, Money c) {
  if (auto m = grid.below_index(c)) return grid[*m];
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Demand functions

double logit_share(double exponent) {
  const double x = std::clamp(exponent, -500.0, 500.0);
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

namespace {

DemandUnits fraction_units(const DemandNode& node, Share fraction) {
  return static_cast<double>(node.volume.units()) * static_cast<double>(fraction.units());
}

DemandUnits logit_units(const DemandNode& node, double intercept, double slope, Money p) {
  return static_cast<double>(node.volume.units()) * static_cast<double>(Share::kScale) *
         logit_share(intercept - slope * p.value());
}

}  // namespace

Demand demand_mnpp(const DemandNode& node, Money p, const PriceGrid& grid) {
  if (p == node.competitor_price) return {fraction_units(node, node.match_share), CaptureKind::kMatch};
  if (auto below = price_below(grid, node.competitor_price); below && p <= *below) {
    return {fraction_units(node, node.war_share), CaptureKind::kWar};
  }
  return {};
}

Demand demand_bmnpp(const DemandNode& node, const Edge& edge, Money p, const PriceGrid& grid) {
  if (p == node.competitor_price) {
    return {logit_units(node, edge.match_intercept, edge.match_slope, node.competitor_price),
            CaptureKind::kMatch};
  }
  const Money floor = node.basket_floor.value_or(grid.min());
  if (auto below = price_below(grid, node.competitor_price); below && floor <= p && p <= *below) {
    return {logit_units(node, edge.war_intercept, edge.war_slope, p), CaptureKind::kWar};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(int n_outlets, std::vector<DemandNode> demands, std::vector<Edge> edges,
                   PriceGrid grid, ModelKind model, std::optional<Money> pi,
                   std::uint64_t seed)
    : n_outlets_(n_outlets),
      demands_(std::move(demands)),
      edges_(std::move(edges)),
      grid_(std::move(grid)),
      model_(model),
      pi_(pi),
      seed_(seed) {
  if (n_outlets_ < 0) throw InputError("negative outlet count");
  if (pi_ && *pi_ < Money{}) throw InputError("price differential bound is negative");

  for (std::size_t e = 0; e < demands_.size(); ++e) {
    auto& node = demands_[e];
    const std::string where = "demand " + std::to_string(e) + ": ";
    node.competitor_price = grid_[grid_.snap_index(node.competitor_price)];
    if (!node.basket_floor) node.basket_floor = grid_.min();
    if (node.volume <= Volume{}) throw InputError(where + "demand volume must be positive");
    if (!(Share{} < node.match_share && node.match_share < Share::from_units(Share::kScale))) {
      throw InputError(where + "beta must lie in (0, 1)");
    }
    if (!(node.match_share < node.war_share && node.war_share <= Share::from_units(Share::kScale))) {
      throw InputError(where + "gamma must lie in (beta, 1]");
    }
    if (*node.basket_floor > node.competitor_price) {
      throw InputError(where + "basket floor exceeds competitor price");
    }
  }

  std::set<std::pair<DemandId, OutletId>> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& edge = edges_[i];
    const std::string where = "edge " + std::to_string(i) + ": ";
    if (edge.demand < 0 || edge.demand >= n_demands()) throw InputError(where + "demand id out of range");
    if (edge.outlet < 0 || edge.outlet >= n_outlets_) throw InputError(where + "outlet id out of range");
    if (!(edge.war_slope >= 0.0) || !(edge.match_slope >= 0.0)) {
      throw InputError(where + "logit slopes must be non-negative");
    }
    if (!std::isfinite(edge.war_intercept) || !std::isfinite(edge.match_intercept) ||
        !std::isfinite(edge.war_slope) || !std::isfinite(edge.match_slope)) {
      throw InputError(where + "logit coefficients must be finite");
    }
    if (!seen.emplace(edge.demand, edge.outlet).second) throw InputError(where + "duplicate (e, f) pair");
  }

  build_tables();
}

void Instance::build_tables() {
  demand_edges_.assign(demands_.size(), {});
  outlet_edges_.assign(static_cast<std::size_t>(n_outlets_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    demand_edges_[edges_[i].demand].push_back(i);
    outlet_edges_[edges_[i].outlet].push_back(i);
  }
  for (auto& list : demand_edges_) {
    std::sort(list.begin(), list.end(),
              [&](std::size_t a, std::size_t b) { return edges_[a].outlet < edges_[b].outlet; });
  }
  for (auto& list : outlet_edges_) {
    std::sort(list.begin(), list.end(),
              [&](std::size_t a, std::size_t b) { return edges_[a].demand < edges_[b].demand; });
  }

  war_ceiling_.resize(demands_.size());
  for (std::size_t e = 0; e < demands_.size(); ++e) {
    war_ceiling_[e] = grid_.below_index(demands_[e].competitor_price);
  }

  const std::size_t n_m = grid_.size();
  for (auto& table : table_) table.assign(edges_.size() * n_m, Demand{});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& node = demands_[edges_[i].demand];
    for (std::size_t m = 0; m < n_m; ++m) {
      table_[0][i * n_m + m] = demand_mnpp(node, grid_[m], grid_);
      table_[1][i * n_m + m] = demand_bmnpp(node, edges_[i], grid_[m], grid_);
    }
  }
}

const Demand& Instance::edge_demand(std::size_t idx, std::size_t m, ModelKind model) const {
  return table_[model == ModelKind::kMnpp ? 0 : 1][idx * grid_.size() + m];
}

std::optional<std::size_t> Instance::find_edge(DemandId e, OutletId f) const {
  for (auto idx : demand_edges_[e]) {
    if (edges_[idx].outlet == f) return idx;
  }
  return std::nullopt;
}

Instance Instance::with_model(ModelKind model) const {
  Instance copy = *this;
  copy.model_ = model;
  return copy;
}

Instance Instance::with_pi(std::optional<Money> pi) const {
  if (pi && *pi < Money{}) throw InputError("price differential bound is negative");
  Instance copy = *this;
  copy.pi_ = pi;
  return copy;
}

bool Instance::operator==(const Instance& o) const {
  return n_outlets_ == o.n_outlets_ && demands_ == o.demands_ && edges_ == o.edges_ &&
         grid_ == o.grid_ && model_ == o.model_ && pi_ == o.pi_ && seed_ == o.seed_;
}

// ---------------------------------------------------------------------------
// Evaluation

std::size_t Allocation::assigned_count() const {
  return static_cast<std::size_t>(
      std::count_if(assign_.begin(), assign_.end(), [](const auto& a) { return a.has_value(); }));
}

void validate_prices(const Instance& inst, std::span<const Money> prices) {
  if (prices.size() != static_cast<std::size_t>(inst.n_outlets())) {
    throw InputError("price vector has " + std::to_string(prices.size()) + " entries, expected " +
                     std::to_string(inst.n_outlets()));
  }
  for (std::size_t f = 0; f < prices.size(); ++f) {
    if (!inst.grid().index_of(prices[f])) {
      throw InputError("price of outlet " + std::to_string(f) + " is not on the grid");
    }
  }
  if (inst.pi() && !prices.empty()) {
    auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
    if (*hi - *lo > *inst.pi()) throw InputError("price spread exceeds the differential bound");
  }
}

Evaluation evaluate_prices(const Instance& inst, std::span<const Money> prices,
                           std::optional<ModelKind> model_override, TieRule ties) {
  if (prices.size() != static_cast<std::size_t>(inst.n_outlets())) {
    throw InputError("price vector size does not match outlet count");
  }
  const ModelKind model = model_override.value_or(inst.model());
  std::vector<std::size_t> index(prices.size());
  for (std::size_t f = 0; f < prices.size(); ++f) {
    auto m = inst.grid().index_of(prices[f]);
    if (!m) throw InputError("price of outlet " + std::to_string(f) + " is not on the grid");
    index[f] = *m;
  }

  Evaluation out;
  out.allocation = Allocation(static_cast<std::size_t>(inst.n_demands()));
  out.labels.assign(static_cast<std::size_t>(inst.n_demands()), CaptureKind::kNone);
  out.captured.assign(static_cast<std::size_t>(inst.n_demands()), 0.0);

  for (DemandId e = 0; e < inst.n_demands(); ++e) {
    const auto edges = inst.demand_edges(e);
    if (edges.empty()) continue;
    // demand_edges is ordered by outlet id, so the first minimum has the lowest index.
    std::size_t best = edges.front();
    for (auto idx : edges) {
      const auto f = inst.edge(idx).outlet;
      const auto fb = inst.edge(best).outlet;
      if (prices[f] < prices[fb]) {
        best = idx;
      } else if (ties == TieRule::kBestDemand && prices[f] == prices[fb] &&
                 inst.edge_demand(idx, index[f], model).units >
                     inst.edge_demand(best, index[fb], model).units) {
        best = idx;
      }
    }
    const auto f = inst.edge(best).outlet;
    const Demand& d = inst.edge_demand(best, index[f], model);
    const Revenue r = Revenue::term(prices[f], d.units);
    if (r.raw() > 0.0) {
      out.revenue += r;
      out.allocation.assign(e, f);
      out.labels[e] = d.kind;
      out.captured[e] = d.units;
    }
  }
  return out;
}

}  // namespace mnpp
