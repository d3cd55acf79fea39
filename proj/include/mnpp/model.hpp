#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mnpp/fixed_point.hpp"

namespace mnpp {

using OutletId = int;
using DemandId = int;

enum class ModelKind { kMnpp, kBmnpp };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// How a demand node is captured at a given price.
enum class CaptureKind { kNone, kMatch, kWar };

/// Which outlet serves a demand node when several share the minimum price.
enum class TieRule {
  kLowestIndex,  ///< market rule: lower outlet index wins
  kBestDemand,   ///< outlet with the largest captured demand wins (IP2 semantics)
};

/// Ascending, duplicate-free list of admissible prices.
class PriceGrid {
 public:
  explicit PriceGrid(std::vector<Money> prices);

  /// Prices lo, lo+step, ..., up to and including hi when reachable.
  static PriceGrid uniform(Money lo, Money hi, Money step);

  std::size_t size() const { return prices_.size(); }
  Money operator[](std::size_t m) const { return prices_[m]; }
  Money min() const { return prices_.front(); }
  Money max() const { return prices_.back(); }
  std::span<const Money> prices() const { return prices_; }

  std::optional<std::size_t> index_of(Money p) const;
  /// Index of the largest grid price strictly below c.
  std::optional<std::size_t> below_index(Money c) const;
  /// Nearest grid index; equidistant values snap down.
  std::size_t snap_index(Money p) const;
  /// Largest index whose price is <= p, if any.
  std::optional<std::size_t> floor_index(Money p) const;

  bool operator==(const PriceGrid&) const = default;

 private:
  std::vector<Money> prices_;
};

/// Largest grid price strictly below c (c^- in pricing terms).
std::optional<Money> price_below(const PriceGrid& grid, Money c);

struct DemandNode {
  Money competitor_price;
  std::optional<Money> basket_floor;  ///< resolved to the grid minimum by Instance
  Volume volume;
  Share match_share;
  Share war_share;

  bool operator==(const DemandNode&) const = default;
};

/// Demand-outlet link with the logit coefficients of the choice model.
struct Edge {
  DemandId demand = 0;
  OutletId outlet = 0;
  double war_intercept = 0.0;    // a_hat
  double war_slope = 0.0;        // b_hat
  double match_intercept = 0.0;  // a_bar
  double match_slope = 0.0;      // b_bar

  bool operator==(const Edge&) const = default;
};

struct Demand {
  DemandUnits units = 0.0;
  CaptureKind kind = CaptureKind::kNone;
};

/// Logit choice probability exp(x)/(1+exp(x)) with x clamped to +-500.
double logit_share(double exponent);

/// Fixed-fraction demand: match share at p == c, war share at p <= c^-.
Demand demand_mnpp(const DemandNode& node, Money p, const PriceGrid& grid);
/// Logit demand: match weight at p == c, war weight on [c_bar, c^-].
Demand demand_bmnpp(const DemandNode& node, const Edge& edge, Money p, const PriceGrid& grid);

/// Bipartite pricing instance. Immutable after construction.
///
/// Competitor prices are snapped to the grid on construction (ties down) and
/// unset basket floors resolve to the grid minimum. Per-edge demand tables for
/// both models are precomputed over the grid.
class Instance {
 public:
  Instance(int n_outlets, std::vector<DemandNode> demands, std::vector<Edge> edges,
           PriceGrid grid, ModelKind model, std::optional<Money> pi = std::nullopt,
           std::uint64_t seed = 0);

  int n_outlets() const { return n_outlets_; }
  int n_demands() const { return static_cast<int>(demands_.size()); }
  std::size_t n_edges() const { return edges_.size(); }
  const PriceGrid& grid() const { return grid_; }
  ModelKind model() const { return model_; }
  /// Maximum spread between any two outlet prices; nullopt means unbounded.
  const std::optional<Money>& pi() const { return pi_; }
  std::uint64_t seed() const { return seed_; }

  const DemandNode& demand(DemandId e) const { return demands_[e]; }
  std::span<const DemandNode> demands() const { return demands_; }
  const Edge& edge(std::size_t idx) const { return edges_[idx]; }
  std::span<const Edge> edges() const { return edges_; }

  /// Edge indices at demand e, ordered by outlet id.
  std::span<const std::size_t> demand_edges(DemandId e) const { return demand_edges_[e]; }
  /// Edge indices at outlet f, ordered by demand id.
  std::span<const std::size_t> outlet_edges(OutletId f) const { return outlet_edges_[f]; }
  std::optional<std::size_t> find_edge(DemandId e, OutletId f) const;
  /// c^- as a grid index.
  std::optional<std::size_t> war_ceiling(DemandId e) const { return war_ceiling_[e]; }

  /// Demand captured over edge idx at grid index m.
  const Demand& edge_demand(std::size_t idx, std::size_t m, ModelKind model) const;
  const Demand& edge_demand(std::size_t idx, std::size_t m) const {
    return edge_demand(idx, m, model_);
  }
  Revenue edge_revenue(std::size_t idx, std::size_t m, ModelKind model) const {
    return Revenue::term(grid_[m], edge_demand(idx, m, model).units);
  }
  Revenue edge_revenue(std::size_t idx, std::size_t m) const {
    return edge_revenue(idx, m, model_);
  }

  /// Same data under a different demand model.
  Instance with_model(ModelKind model) const;
  Instance with_pi(std::optional<Money> pi) const;

  bool operator==(const Instance& o) const;

 private:
  void build_tables();

  int n_outlets_;
  std::vector<DemandNode> demands_;
  std::vector<Edge> edges_;
  PriceGrid grid_;
  ModelKind model_;
  std::optional<Money> pi_;
  std::uint64_t seed_;

  std::vector<std::vector<std::size_t>> demand_edges_;
  std::vector<std::vector<std::size_t>> outlet_edges_;
  std::vector<std::optional<std::size_t>> war_ceiling_;
  // [model][edge * grid_size + m]
  std::vector<Demand> table_[2];
};

/// Demand-to-outlet assignment; each demand maps to at most one outlet.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t n_demands) : assign_(n_demands) {}

  void assign(DemandId e, OutletId f) { assign_[e] = f; }
  std::optional<OutletId> outlet_of(DemandId e) const { return assign_[e]; }
  bool is_assigned(DemandId e) const { return assign_[e].has_value(); }
  std::size_t size() const { return assign_.size(); }
  std::size_t assigned_count() const;

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::optional<OutletId>> assign_;
};

struct Evaluation {
  Revenue revenue;
  Allocation allocation;
  /// Capture class per demand node for its serving outlet (kNone if unserved).
  std::vector<CaptureKind> labels;
  /// Captured demand per node.
  std::vector<DemandUnits> captured;
};

/// Checks one grid price per outlet and the spread bound; throws InputError.
void validate_prices(const Instance& inst, std::span<const Money> prices);

/// Revenue of a full price vector under min-pricing semantics.
Evaluation evaluate_prices(const Instance& inst, std::span<const Money> prices,
                           std::optional<ModelKind> model_override = std::nullopt,
                           TieRule ties = TieRule::kLowestIndex);

}  // namespace mnpp
