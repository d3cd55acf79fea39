#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mnpp/model.hpp"

namespace mnpp {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GridSpec {
  Money min = Money::from_units(0);
  Money max = Money::from_units(2500);
  Money step = Money::from_units(50);

  PriceGrid build() const { return PriceGrid::uniform(min, max, step); }
};

struct GenParams {
  int n_outlets = 5;
  int n_demands = 15;
  double density = 0.5;
  ModelKind model = ModelKind::kMnpp;
  /// Seeds demand and logit values.
  std::uint64_t seed = 0;
  /// Seeds the edge set; defaults to `seed`. Draws that share a graph share this.
  std::optional<std::uint64_t> graph_seed;
  GridSpec grid;
  Range competitor_price{0.0, 25.0};
  Range volume{50.0, 150.0};
  Share beta = Share::from_units(5000);
  Share gamma = Share::from_units(10000);
  Range intercept{200.0, 400.0};
  Range slope{0.0, 20.0};
  std::optional<Money> pi;
  /// Sample logit coefficients even for MNPP instances (cross-model studies).
  bool sample_logit = false;
};

/// Throws InputError on invalid parameters.
void validate(const GenParams& params);

/// Number of edges for a density: round-half-up of P * |O| * |N|.
std::size_t edge_count(int n_outlets, int n_demands, double density);

/// Random instance, fully determined by the parameters.
///
/// Draw order (format contract):
///  1. graph stream Xoshiro256(graph_seed): partial Fisher-Yates over the
///     |N|*|O| pair indices k = e*|O| + f, first edge_count taken, then sorted;
///  2. value stream Xoshiro256(seed): per demand c ~ U[c), d ~ U[d) rounded to
///     0.01; then per edge (sorted order) a_hat, b_hat, a_bar, b_bar when logit
///     coefficients are sampled.
Instance generate(const GenParams& params);

struct SuiteEntry {
  std::size_t graph_index = 0;
  std::size_t draw_index = 0;
  GenParams params;
};

/// Full experimental design: |O| x |N| x P graphs times `draws` value draws,
/// seeds from derive_seed(master, graph, draw) and derive_seed(master, graph, ~0).
std::vector<SuiteEntry> suite_params(std::uint64_t master_seed, ModelKind model,
                                     const std::vector<int>& outlets,
                                     const std::vector<int>& demands,
                                     const std::vector<double>& densities, int draws,
                                     const GenParams& base = {});

/// The 3 x 3 x 5 graph, 10 draw design (450 instances).
std::vector<SuiteEntry> full_design_params(std::uint64_t master_seed, ModelKind model);

}  // namespace mnpp
